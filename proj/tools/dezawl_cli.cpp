// Command-line front end: construct, verify, wl-rank, sweep.
//
// Exit codes: 0 success, 1 verification failure, 2 usage / parse / I/O error.

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dezawl/dezawl.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw UsageError("failed writing " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_construct(int k, const std::string& format, const std::string& out) {
  const auto g = dezawl::build_paper_group(k);
  const auto gamma = dezawl::gamma_graph(g, k);
  std::string text;
  if (format == "edgelist") {
    text = dezawl::to_edge_list(gamma);
  } else if (format == "dot") {
    text = dezawl::to_dot(gamma, "Gamma_" + std::to_string(k));
  } else {
    text = dezawl::to_json(gamma);
  }
  write_text(out, text);
  return kExitOk;
}

int cmd_verify(int k, std::string json_path, const dezawl::VerifyOptions& opt) {
  const auto report = dezawl::build_report(k, opt);
  std::cout << dezawl::summary(report);
  if (json_path.empty()) json_path = "verify_k" + std::to_string(k) + ".json";
  write_text(json_path, dezawl::to_json(report).dump(2) + "\n");
  if (const auto* f = report.first_failure()) {
    std::cerr << "verification failed: " << f->name << " (" << f->detail << ")\n";
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_wl_rank(const std::string& in, const std::string& config_out, bool compact) {
  const auto g = dezawl::load_graph(read_text(in));
  const auto cc = dezawl::wl2(g);
  std::cout << cc.rank << "\n";
  if (!config_out.empty()) write_text(config_out, dezawl::to_json(cc, compact).dump() + "\n");
  return kExitOk;
}

int cmd_sweep(int from, int to, const std::string& csv_path, const std::string& json_path, bool timings,
              unsigned jobs) {
  if (from < 3) throw UsageError("sweep range must start at k >= 3");
  if (from > to) throw UsageError("empty sweep range");

  dezawl::VerifyOptions opt;
  opt.timings = timings;
  std::vector<dezawl::VerificationReport> reports;
  for (int k = from; k <= to;) {
    std::vector<std::future<dezawl::VerificationReport>> batch;
    for (unsigned j = 0; j < std::max(jobs, 1u) && k <= to; ++j, ++k)
      batch.push_back(std::async(std::launch::async, [k, opt] { return dezawl::build_report(k, opt); }));
    for (auto& f : batch) reports.push_back(f.get());
  }

  std::string csv = dezawl::csv_header(timings) + "\n";
  auto rows = nlohmann::json::array();
  bool all_pass = true;
  for (const auto& r : reports) {
    csv += dezawl::csv_row(r) + "\n";
    rows.push_back(dezawl::to_json(r));
    all_pass = all_pass && r.pass();
  }
  std::cout << csv;
  if (!csv_path.empty()) write_text(csv_path, csv);
  if (!json_path.empty()) write_text(json_path, rows.dump(2) + "\n");
  return all_pass ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strictly Deza Cayley graphs over D_2k x C2 x C2: construction and exact verification"};
  app.require_subcommand(1);

  int k = 3;
  std::string format = "edgelist", out = "-";
  auto* construct = app.add_subcommand("construct", "write the graph for a given k");
  construct->add_option("--k", k, "k >= 3")->required();
  construct->add_option("--format", format, "edgelist, dot or json")
      ->check(CLI::IsMember({"edgelist", "dot", "json"}));
  construct->add_option("--out", out, "output path ('-' for stdout)");

  std::string json_path;
  dezawl::VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "check every claim for a given k");
  verify->add_option("--k", k, "k >= 3")->required();
  verify->add_option("--json", json_path, "JSON report path (default verify_k<K>.json)");
  verify->add_flag("--drop-edge", vopt.drop_edge, "debug: remove one edge before the graph checks");
  verify->add_flag("--timings", vopt.timings, "include wall-clock timings per phase");

  std::string in, config_out;
  bool compact = false;
  auto* rank = app.add_subcommand("wl-rank", "print the WL-rank of a graph file");
  rank->add_option("--in", in, "edge list or JSON graph")->required();
  rank->add_option("--config-out", config_out, "also write the coherent configuration as JSON");
  rank->add_flag("--compact", compact, "run-length encode the color matrix");

  int from = 3, to = 3;
  std::string csv_path, sweep_json;
  bool sweep_timings = false;
  unsigned jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "tabulate results over a range of k");
  sweep->add_option("--from", from, "first k")->required();
  sweep->add_option("--to", to, "last k")->required();
  sweep->add_option("--csv", csv_path, "also write the table to this path");
  sweep->add_option("--json", sweep_json, "write full reports as a JSON array");
  sweep->add_flag("--timings", sweep_timings, "add timing columns");
  sweep->add_option("--jobs", jobs, "number of k values processed concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*construct) return cmd_construct(k, format, out);
    if (*verify) return cmd_verify(k, json_path, vopt);
    if (*rank) return cmd_wl_rank(in, config_out, compact);
    if (*sweep) return cmd_sweep(from, to, csv_path, sweep_json, sweep_timings, jobs);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dezawl::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dezawl::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
