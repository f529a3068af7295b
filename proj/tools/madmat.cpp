// Copyright 2026 The madmat Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.  Exit codes: 0 success/accept, 1 reject or failed
// property (exhausted search, budget overrun, divergent sum, failing oracle),
// 2 usage or input error (bad flags, malformed files, violated
// preconditions).

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "madmat/construction.hpp"
#include "madmat/counting.hpp"
#include "madmat/diophantine.hpp"
#include "madmat/io.hpp"
#include "madmat/rational.hpp"
#include "madmat/sums.hpp"

namespace {

using namespace madmat;

std::string format_int_vector(const IntVector& q) {
  std::string out = "(";
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i != 0) out += ", ";
    out += std::to_string(q[i]);
  }
  out += ")";
  return out;
}

std::string format_matrix(const RationalMatrix& a) {
  std::string out = "[";
  for (int i = 0; i < a.rows; ++i) {
    if (i != 0) out += "; ";
    for (int j = 0; j < a.cols; ++j) {
      if (j != 0) out += " ";
      out += format_rational(a.at(i, j));
    }
  }
  out += "]";
  return out;
}

std::string format_danger_point(const DangerPoint& point) {
  return "p=" + format_int_vector(point.p) + " q=" + format_int_vector(point.q);
}

Rational parse_precision_flag(const std::string& text) {
  const Rational precision = parse_rational(text);
  if (sgn(precision) < 0)
    throw PreconditionViolated("--precision must be >= 0");
  return precision;
}

int run_construct(const std::string& config_path, int depth,
                  const std::string& mode_name, const std::string& out_path) {
  const ConstructionConfig config = parse_config(read_text_file(config_path));
  const SearchMode mode = mode_name == "full" ? SearchMode::kFullFrontier
                                              : SearchMode::kDfsWitness;
  ConstructionStats stats;
  const Certificate cert = run_construction(config, depth, mode, &stats);
  write_text_file(out_path, serialize_certificate(cert));
  std::cout << "wrote certificate: " << out_path << "\n"
            << "depth K=" << cert.K << " mode=" << mode_name << "\n"
            << "witness=" << format_matrix(cert.witness) << "\n"
            << "finite_range_bound=" << format_rational(cert.finite_range_bound)
            << "\n"
            << "nodes_tested=" << stats.nodes_tested << "\n";
  return 0;
}

int run_verify(const std::string& cert_path) {
  const Certificate cert = parse_certificate(read_text_file(cert_path));
  const VerificationResult result = verify_certificate(cert);
  if (result.accepted) {
    std::cout << "ACCEPT: certificate valid, depth K=" << cert.K
              << ", finite_range_bound="
              << format_rational(cert.finite_range_bound) << "\n";
    return 0;
  }
  std::cout << "REJECT: " << result.reason << "\n";
  if (result.offending.has_value())
    std::cout << "offending danger point: "
              << format_danger_point(*result.offending) << "\n";
  return 1;
}

int run_scan(const std::string& matrix_path, long long budget,
             const Rational& precision, int threads) {
  const MatrixFile file = parse_matrix_file(read_text_file(matrix_path));
  std::vector<Rational> gamma = file.gamma;
  if (gamma.empty())
    gamma.assign(static_cast<std::size_t>(file.matrix.rows), Rational(0));
  const ScanResult result =
      scan_min_form(file.matrix, gamma, budget, precision, threads);
  std::cout << "scanned=" << result.scanned
            << " min_lower=" << format_rational(result.min_lower)
            << " argmin=" << format_int_vector(result.argmin) << "\n";
  return 0;
}

int run_sums(const std::string& matrix_path,
             const std::vector<long long>& q_list, const Rational& precision) {
  const MatrixFile file = parse_matrix_file(read_text_file(matrix_path));
  const auto rows = growth_table(file.matrix, q_list, file.matrix.rows,
                                 file.matrix.cols, precision);
  std::cout << growth_table_csv(rows);
  return 0;
}

int run_oracle(const std::string& suite, long long trials,
               unsigned long long seed) {
  OracleReport report;
  if (suite == "hypercount") {
    report = run_hypercount_suite(trials, seed);
  } else if (suite == "separation") {
    report = run_separation_suite(trials, seed);
  } else if (suite == "faces") {
    report = run_faces_suite(trials, seed);
  } else {
    report = run_bands_suite(
        static_cast<int>(std::min<long long>(trials, 12)));
  }
  std::cout << report.csv << "suite=" << suite << " trials=" << report.trials
            << " failures=" << report.failures << "\n";
  return report.pass() ? 0 : 1;
}

int run_params(const std::string& config_path, int horizon) {
  const ConstructionConfig config = parse_config(read_text_file(config_path));
  const ParameterReport report = check_parameters(config, horizon);
  const auto line = [](const char* name, bool pass) {
    std::cout << name << ": " << (pass ? "PASS" : "FAIL") << "\n";
  };
  line("condition_i", report.condition_i);
  line("condition_ii", report.condition_ii);
  line("condition_iii", report.condition_iii);
  line("tail", report.tail_covered);
  line("condition_v", report.condition_v);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for multiplicatively badly approximable "
               "matrices: Cantor-scheme construction, witness certificates, "
               "counting oracles"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads,
                 "worker threads; never changes outputs")
      ->check(CLI::Range(1, 256));

  std::string config_path;
  std::string cert_path;
  std::string matrix_path;
  std::string out_path;
  std::string mode_name = "dfs";
  std::string suite;
  std::string precision_text = "1/1048576";
  int depth = 0;
  int horizon = 12;
  long long budget = 0;
  long long trials = 100;
  unsigned long long seed = 1;
  std::vector<long long> q_list;

  CLI::App* construct = app.add_subcommand(
      "construct", "run the Cantor-scheme search and write a certificate");
  construct->add_option("--config", config_path, "construction config JSON")
      ->required();
  construct->add_option("--depth", depth, "target generation K")
      ->required()
      ->check(CLI::Range(0, 1 << 20));
  construct->add_option("--mode", mode_name, "search mode")
      ->check(CLI::IsMember({"dfs", "full"}));
  construct->add_option("--out", out_path, "output certificate path")
      ->required();

  CLI::App* verify =
      app.add_subcommand("verify", "re-check a certificate independently");
  verify->add_option("--cert", cert_path, "certificate JSON")->required();

  CLI::App* scan = app.add_subcommand(
      "scan", "certified minimum of the height-weighted form over a height "
              "range");
  scan->add_option("--matrix", matrix_path, "matrix JSON (optional gamma)")
      ->required();
  scan->add_option("--budget", budget, "max multiplicative height")
      ->required()
      ->check(CLI::Range(1LL, 1'000'000'000LL));
  scan->add_option("--precision", precision_text,
                   "rational width for certified bounds");

  CLI::App* sums = app.add_subcommand(
      "sums", "growth table of the reciprocal fractional-part sums");
  sums->add_option("--matrix", matrix_path, "matrix JSON")->required();
  sums->add_option("--q-list", q_list, "box radii")
      ->required()
      ->delimiter(',');
  sums->add_option("--precision", precision_text,
                   "rational accumulation width, 0 for exact");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "randomized brute-force suites for the counting bounds");
  oracle->add_option("--suite", suite, "which suite")
      ->required()
      ->check(CLI::IsMember({"hypercount", "separation", "faces", "bands"}));
  oracle->add_option("--trials", trials, "number of trials")
      ->check(CLI::Range(0LL, 1'000'000LL));
  oracle->add_option("--seed", seed, "RNG seed");

  CLI::App* params = app.add_subcommand(
      "params", "certified admissibility check of construction parameters");
  params->add_option("--config", config_path, "construction config JSON")
      ->required();
  params->add_option("--horizon", horizon, "largest generation checked")
      ->check(CLI::Range(0, 10'000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (construct->parsed())
      return run_construct(config_path, depth, mode_name, out_path);
    if (verify->parsed()) return run_verify(cert_path);
    if (scan->parsed())
      return run_scan(matrix_path, budget,
                      parse_precision_flag(precision_text), threads);
    if (sums->parsed())
      return run_sums(matrix_path, q_list,
                      parse_precision_flag(precision_text));
    if (oracle->parsed()) return run_oracle(suite, trials, seed);
    if (params->parsed()) return run_params(config_path, horizon);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidC& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
