// domino: enumerate tilings of grid cylinders and tori, analyze their flip
// graphs, compute forcing spectra, and run the verification suite.
//
// Exit codes: 0 ok, 1 error, 2 invalid topology, 3 budget exceeded,
// 4 verification failure, 5 unsupported format for the command.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "acceptance_suite.hpp"
#include "domino/io.hpp"

namespace {

using namespace domino;
using json = io::json;

enum Exit : int { kOk = 0, kError = 1, kInvalidTopology = 2, kBudget = 3, kVerifyFailed = 4, kBadFormat = 5 };

struct BudgetHit : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadFormat : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobSpec {
  std::string topology = "torus";
  int vrows = 0;
  int vcols = 0;
  std::string paper_name;
  std::string out;
  std::string format;
  int threads = default_thread_count();
  std::optional<std::size_t> budget_matchings;
  std::optional<double> budget_seconds;
  std::string suite = "paper";
  std::string tier = "fast";
  bool list = false;
  int matching = 0;
};

GridGraph graph_of(const JobSpec& job) {
  if (!job.paper_name.empty()) {
    std::smatch m;
    static const std::regex re(R"(^\s*([CT])\s*:\s*(\d+)\s*,\s*(\d+)\s*$)");
    if (!std::regex_match(job.paper_name, m, re))
      throw TopologyError("--paper-name must look like C:a,b or T:a,b");
    int a = std::stoi(m[2]), b = std::stoi(m[3]);
    return m[1] == "C" ? paper_cylinder(a, b) : paper_torus(a, b);
  }
  return build_grid({parse_topology_kind(job.topology), job.vrows, job.vcols});
}

void write(const JobSpec& job, const std::string& text) {
  if (job.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(job.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + job.out + " for writing");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_format(const std::string& fmt, std::initializer_list<const char*> allowed, const char* command) {
  for (const char* a : allowed)
    if (fmt == a) return;
  throw BadFormat(std::string("format '") + fmt + "' is not supported by " + command);
}

MatchingStore enumerate_with_budget(const GridGraph& g, const JobSpec& job) {
  const auto t0 = std::chrono::steady_clock::now();
  MatchingStore store(g.id());
  bool over = false;
  for_each_perfect_matching(g, [&](const EdgeSet& bits) {
    if (job.budget_matchings && store.size() >= *job.budget_matchings) {
      over = true;
      return false;
    }
    if (job.budget_seconds && (store.size() & 1023) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > *job.budget_seconds) {
      over = true;
      return false;
    }
    store.insert(bits);
    return true;
  });
  if (over) throw BudgetHit("matching budget exceeded after " + std::to_string(store.size()) + " matchings");
  return store;
}

int cmd_enumerate(const JobSpec& job) {
  auto g = graph_of(job);
  std::string fmt = job.format.empty() ? "json" : job.format;
  require_format(fmt, {"json", "ascii-tiling"}, "enumerate");
  auto store = enumerate_with_budget(g, job);
  if (fmt == "json") {
    write(job, dump(io::matchings_report(g, store, job.list)));
  } else {
    std::string text;
    for (std::size_t i = 0; i < store.size(); ++i)
      text += "# matching " + std::to_string(i) + "\n" + io::ascii_tiling(g, store[i]) + "\n";
    write(job, text);
  }
  return kOk;
}

int cmd_flipgraph(const JobSpec& job) {
  auto g = graph_of(job);
  std::string fmt = job.format.empty() ? "json" : job.format;
  require_format(fmt, {"json", "dot"}, "flipgraph");
  auto store = enumerate_with_budget(g, job);
  auto fg = build_flip_graph(g, store, job.threads);
  if (fmt == "dot") {
    write(job, io::to_dot(fg));
  } else {
    auto rep = components(fg);
    json j = io::to_json(rep);
    j["matchings"] = store.size();
    j["flip_edges"] = fg.edge_count();
    write(job, dump(j));
  }
  return kOk;
}

int cmd_spectrum(const JobSpec& job) {
  auto g = graph_of(job);
  std::string fmt = job.format.empty() ? "json" : job.format;
  require_format(fmt, {"json"}, "spectrum");
  SpectrumOptions opt;
  opt.threads = job.threads;
  opt.budget_matchings = job.budget_matchings;
  opt.budget_seconds = job.budget_seconds;
  auto rep = forcing_spectrum(g, opt);
  write(job, dump(io::to_json(rep)));
  return rep.authoritative ? kOk : kBudget;
}

int cmd_forcing(const JobSpec& job) {
  auto g = graph_of(job);
  std::string fmt = job.format.empty() ? "csv" : job.format;
  require_format(fmt, {"csv", "json"}, "forcing");
  auto store = enumerate_with_budget(g, job);
  auto res = forcing_numbers(g, store, job.threads);
  if (fmt == "csv") {
    write(job, io::forcing_csv(res));
  } else {
    json rows = json::array();
    for (const auto& r : res)
      rows.push_back({{"matching_id", r.matching_id}, {"forcing_number", r.forcing_number}, {"witness", r.witness}});
    write(job, dump(json{{"schema", io::kSchema}, {"results", std::move(rows)}}));
  }
  return kOk;
}

const Matching& pick(const MatchingStore& store, int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= store.size())
    throw std::out_of_range("matching id " + std::to_string(id) + " out of range (have " +
                            std::to_string(store.size()) + ")");
  return store[static_cast<std::size_t>(id)];
}

int cmd_ladder(const JobSpec& job) {
  auto g = graph_of(job);
  std::string fmt = job.format.empty() ? "json" : job.format;
  require_format(fmt, {"json"}, "ladder");
  auto store = enumerate_with_budget(g, job);
  write(job, dump(io::to_json(ladder_reduce(g, pick(store, job.matching)))));
  return kOk;
}

int cmd_marked(const JobSpec& job) {
  auto g = graph_of(job);
  std::string fmt = job.format.empty() ? "json" : job.format;
  require_format(fmt, {"json"}, "marked");
  auto store = enumerate_with_budget(g, job);
  auto [ms, s] = marked_forcing_set(g, pick(store, job.matching));
  write(job, dump(io::to_json(ms, s)));
  return kOk;
}

int cmd_verify(const JobSpec& job) {
  if (job.suite != "paper") throw std::invalid_argument("unknown suite '" + job.suite + "'");
  acceptance::Tier tier;
  if (job.tier == "fast") tier = acceptance::Tier::Fast;
  else if (job.tier == "extended") tier = acceptance::Tier::Extended;
  else throw std::invalid_argument("tier must be fast or extended");
  bool ok = acceptance::run(tier, job.threads, std::cout);
  std::cout << (ok ? "verification passed" : "verification FAILED") << '\n';
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domino tilings of grid cylinders and tori: enumeration, flip graphs, forcing spectra"};
  app.require_subcommand(1);
  JobSpec job;

  auto add_common = [&](CLI::App* sub, bool with_topology) {
    if (with_topology) {
      sub->add_option("--topology", job.topology, "rectangle | cylinder | torus")
          ->check(CLI::IsMember({"rectangle", "cylinder", "torus"}));
      sub->add_option("--vrows", job.vrows, "vertex rows");
      sub->add_option("--vcols", job.vcols, "vertex columns (wrapped on cylinders)");
      sub->add_option("--paper-name", job.paper_name, "C:a,b (a+1 rows, b columns) or T:a,b");
      sub->add_option("--budget-matchings", job.budget_matchings, "stop after this many matchings")
          ->check(CLI::PositiveNumber);
      sub->add_option("--budget-seconds", job.budget_seconds, "wall-clock budget")->check(CLI::PositiveNumber);
      sub->add_option("--format", job.format, "json | csv | dot | ascii-tiling");
    }
    sub->add_option("--out", job.out, "output file (default stdout)");
    sub->add_option("--threads", job.threads, "worker threads (default $DOMINO_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
  };

  auto* enumerate = app.add_subcommand("enumerate", "enumerate perfect matchings");
  add_common(enumerate, true);
  enumerate->add_flag("--list", job.list, "include every matching in the JSON report");
  auto* flipgraph = app.add_subcommand("flipgraph", "flip graph components or DOT export");
  add_common(flipgraph, true);
  auto* spectrum = app.add_subcommand("spectrum", "exact forcing spectrum");
  add_common(spectrum, true);
  auto* forcing = app.add_subcommand("forcing", "forcing number and witness per matching");
  add_common(forcing, true);
  auto* ladder = app.add_subcommand("ladder", "ladder-reduction flip trace for one matching of an odd x even torus");
  add_common(ladder, true);
  ladder->add_option("--matching", job.matching, "matching id in enumeration order");
  auto* marked = app.add_subcommand("marked", "marked-vertex forcing set for one matching of an odd x even torus");
  add_common(marked, true);
  marked->add_option("--matching", job.matching, "matching id in enumeration order");
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  add_common(verify, false);
  verify->add_option("--suite", job.suite, "suite name")->check(CLI::IsMember({"paper"}));
  verify->add_option("--tier", job.tier, "fast | extended")->check(CLI::IsMember({"fast", "extended"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enumerate) return cmd_enumerate(job);
    if (*flipgraph) return cmd_flipgraph(job);
    if (*spectrum) return cmd_spectrum(job);
    if (*forcing) return cmd_forcing(job);
    if (*ladder) return cmd_ladder(job);
    if (*marked) return cmd_marked(job);
    if (*verify) return cmd_verify(job);
  } catch (const TopologyError& e) {
    std::cerr << "invalid topology: " << e.what() << '\n';
    return kInvalidTopology;
  } catch (const BudgetHit& e) {
    std::cerr << e.what() << '\n';
    return kBudget;
  } catch (const BudgetExceeded& e) {
    std::cerr << e.what() << '\n';
    return kBudget;
  } catch (const BadFormat& e) {
    std::cerr << e.what() << '\n';
    return kBadFormat;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
