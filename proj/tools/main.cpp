// Copyright 2026 The ghzbell Authors
//
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

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config_io.hpp"
#include "ghzbell/bell.hpp"
#include "ghzbell/degeneracy.hpp"
#include "ghzbell/games.hpp"
#include "report.hpp"

namespace ghzbell::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitParity = 5;

const double kTsirelson = 2 * std::numbers::sqrt2;

struct Outcome {
  Json result;
  bool passed = true;
  nlohmann::json digest_input;
  std::optional<std::uint64_t> seed;
};

Json vec3(const Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json config_json(const BellConfig& cfg) {
  Json j;
  j["n"] = cfg.n();
  for (int a = 0; a < 2; ++a) {
    Json list = Json::array();
    for (const auto& d : cfg.alice(a)) list.push_back(direction_json(d));
    j[a == 0 ? "a0" : "a1"] = list;
  }
  j["b0"] = direction_json(cfg.b0());
  j["b1"] = direction_json(cfg.b1());
  return j;
}

Json sparse_amplitudes(const State& s) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    const auto a = s[i];
    if (std::abs(a) > 1e-12) out.push_back(Json::array({i, a.real(), a.imag()}));
  }
  return out;
}

Json table_json(const GameOutcomeTable& t) {
  Json j;
  j["i_value"] = t.i_value;
  j["success_probability"] = t.success_probability;
  j["win_probability"] = Json::array({Json::array({t.win_probability[0][0], t.win_probability[0][1]}),
                                      Json::array({t.win_probability[1][0], t.win_probability[1][1]})});
  return j;
}

double operator_value(const BellConfig& cfg) {
  const State g = ghz_state(cfg.n());
  return g.amplitudes().dot(apply_bell_operator(cfg, g)).real();
}

Outcome run_eval(const std::string& path) {
  const LoadedConfig loaded = load_config(path);
  const double closed = closed_form_bell_value(loaded.config);
  const double op = operator_value(loaded.config);
  Outcome o;
  o.digest_input = loaded.canonical;
  o.result["config"] = config_json(loaded.config);
  o.result["i_n"] = closed;
  o.result["i_n_operator"] = op;
  o.result["difference"] = std::abs(closed - op);
  o.result["violates_classical_bound"] = std::abs(closed) > 2 + 1e-9;
  o.result["saturates_tsirelson"] = std::abs(std::abs(closed) - kTsirelson) < 1e-9;
  o.passed = std::abs(closed - op) < 1e-10;
  return o;
}

Outcome run_reduce(const std::string& path) {
  const LoadedConfig loaded = load_config(path);
  const ReductionReport r = reduce_to_two_qubit(loaded.config);
  Outcome o;
  o.digest_input = loaded.canonical;
  o.result["config"] = config_json(loaded.config);
  o.result["two_qubit"] = {{"a0", vec3(r.two_qubit.a0)},
                           {"a1", vec3(r.two_qubit.a1)},
                           {"b0", vec3(r.two_qubit.b0)},
                           {"b1", vec3(r.two_qubit.b1)}};
  o.result["eps"] = r.eps;
  o.result["eps_prime"] = r.eps_prime;
  o.result["i_n"] = r.i_n;
  o.result["i_2"] = r.i_2;
  const bool positive = r.i_n > 2;
  const bool negative = r.i_n < -2;
  bool holds = true;
  if (positive) holds = r.i_2 >= r.i_n - 1e-9;
  if (negative) holds = r.i_2 <= r.i_n + 1e-9;
  o.result["violation"] = positive ? "positive" : (negative ? "negative" : "none");
  o.result["i_2_dominates"] = holds;
  o.passed = holds;
  return o;
}

Outcome run_degeneracy(int family, int n, const std::vector<double>& phi_primes, bool spectral) {
  const DegeneracyOptions opts{.spectral_check = spectral};
  DegeneracyReport r = [&] {
    if (family == 1) {
      if (!phi_primes.empty()) throw ParseError("--phi-primes applies to case 5 only");
      return degenerate_basis_case1(n, opts);
    }
    if (n < 2) throw ParseError("--n must be at least 2");
    if (n > kMaxQubits) throw CapacityError("n exceeds " + std::to_string(kMaxQubits) + " qubits");
    const auto phi = phi_primes.empty() ? default_case5_phases(n) : phi_primes;
    if (static_cast<int>(phi.size()) != n - 1) throw ParseError("--phi-primes needs n - 1 values");
    return degenerate_basis_case5(n, phi, opts);
  }();

  Outcome o;
  o.digest_input = {{"case", family}, {"n", n}, {"phi_primes", phi_primes}, {"spectral", spectral}};
  o.result["case"] = family;
  o.result["n"] = n;
  Json phis = Json::array();
  for (const auto& d : r.config.a1()) phis.push_back(echo_angle(d.phi()));
  if (family == 5) o.result["phi_primes"] = phis;
  o.result["max_eigenvalue"] = r.max_eigenvalue;
  o.result["multiplicity"] = r.multiplicity;
  o.result["bound"] = 1 << (n - 2);
  o.result["construction"] = to_string(r.construction);
  o.result["spectral_multiplicity"] = r.spectral_multiplicity ? Json(*r.spectral_multiplicity) : Json(nullptr);
  o.result["spectral_check"] = !r.spectral_multiplicity ? "skipped" : (r.spectral_agrees() ? "agree" : "disagree");
  o.result["max_residual"] = r.max_residual;
  o.result["orthonormality_defect"] = r.orthonormality_defect;
  Json basis = Json::array();
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    basis.push_back({{"subset", r.subsets[i]}, {"amplitudes", sparse_amplitudes(r.basis[i])}});
  }
  o.result["basis"] = basis;
  o.passed = r.passed();
  return o;
}

Outcome run_game(const std::string& strategy_spec, const std::string& game_name, std::optional<std::uint64_t> shots,
                 std::uint64_t seed, int threads) {
  const LoadedStrategy loaded = load_strategy(strategy_spec);
  const Game game = game_name == "chsh" ? Game::Chsh : Game::ChshStar;
  const GameOutcomeTable mine = game_value(loaded.strategy, game);
  const GameOutcomeTable other = game_value(loaded.strategy, game == Game::Chsh ? Game::ChshStar : Game::Chsh);

  double win_gap = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      win_gap = std::max(win_gap, std::abs(mine.win_probability[a][b] - other.win_probability[a][b]));

  Outcome o;
  o.digest_input = {{"strategy", loaded.canonical}, {"game", game_name}, {"shots", shots ? Json(*shots) : Json(nullptr)}};
  o.result["game"] = game_name;
  o.result["strategy"] = strategy_spec;
  o.result["exact"] = table_json(mine);
  o.result["equivalence"] = {{"i_value_difference", std::abs(mine.i_value - other.i_value)},
                             {"max_win_probability_difference", win_gap}};
  o.passed = std::abs(mine.i_value - other.i_value) < 1e-12 && win_gap < 1e-12 &&
             std::abs(mine.success_probability - (0.5 + mine.i_value / 8)) < 1e-12;
  if (shots) {
    const MonteCarloEstimate mc = play_monte_carlo(loaded.strategy, game, *shots, seed, threads);
    o.seed = seed;
    o.result["monte_carlo"] = {{"shots", mc.shots},
                               {"seed", mc.seed},
                               {"wins", mc.wins},
                               {"estimate", mc.estimate},
                               {"standard_error", mc.standard_error},
                               {"within_5_sigma", std::abs(mc.estimate - mine.success_probability) <= 5 * mc.standard_error}};
  }
  return o;
}

Outcome run_scan(const std::vector<int>& n_values, std::uint64_t samples, std::uint64_t seed, int threads) {
  for (int n : n_values) {
    if (n > kMaxQubits) throw CapacityError("n exceeds " + std::to_string(kMaxQubits) + " qubits");
    if (n < 2) throw ParseError("--n values must be at least 2");
  }
  ScanOptions opts;
  opts.n_values = n_values;
  opts.samples = samples;
  opts.seed = seed;
  opts.threads = threads;
  const ScanReport report = reduction_scan(opts);

  Outcome o;
  o.seed = seed;
  o.digest_input = {{"n", n_values}, {"samples", samples}};
  Json rows = Json::array();
  std::uint64_t total = 0;
  for (const ScanRow& r : report.rows) {
    const std::uint64_t violating = r.violating_positive + r.violating_negative;
    rows.push_back({{"n", r.n},
                    {"samples", r.samples},
                    {"violating_positive", r.violating_positive},
                    {"violating_negative", r.violating_negative},
                    {"violation_rate", static_cast<double>(violating) / static_cast<double>(r.samples)},
                    {"excluded", r.excluded},
                    {"counterexamples", r.counterexamples},
                    {"max_gap_violation", r.max_gap_violation},
                    {"max_i_n", r.max_i_n},
                    {"min_i_n", r.min_i_n}});
    total += r.counterexamples;
  }
  o.result["rows"] = rows;
  o.result["counterexamples"] = total;
  o.passed = report.passed();
  return o;
}

Outcome run_example_n4() {
  const ExampleN4Report ex = reproduce_example_n4();
  const DegeneracyReport& r = ex.degeneracy;
  Outcome o;
  o.digest_input = {{"example", "n4"}};
  o.result["config"] = config_json(example_n4_config());
  Json phis = Json::array();
  for (double p : ex.rotated_phi_primes) phis.push_back(echo_angle(p));
  o.result["rotated_phi_primes"] = phis;
  o.result["max_eigenvalue"] = r.max_eigenvalue;
  o.result["multiplicity"] = r.multiplicity;
  o.result["spectral_multiplicity"] = r.spectral_multiplicity ? Json(*r.spectral_multiplicity) : Json(nullptr);
  o.result["spectral_check"] = r.spectral_agrees() ? "agree" : "disagree";
  o.result["max_residual"] = r.max_residual;
  Json states = Json::array();
  bool fidelities_ok = true;
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    states.push_back({{"subset", r.subsets[i]},
                      {"amplitudes", sparse_amplitudes(r.basis[i])},
                      {"reference", sparse_amplitudes(ex.expected[i])},
                      {"fidelity", ex.fidelities[i]}});
    fidelities_ok = fidelities_ok && ex.fidelities[i] >= 1 - 1e-10;
  }
  o.result["states"] = states;
  o.passed = r.passed() && fidelities_ok && r.multiplicity == 4;
  return o;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CapacityError*>(&e)) return kExitCapacity;
  if (dynamic_cast<const DegenerateDirectionError*>(&e)) return kExitDegenerate;
  if (dynamic_cast<const ParityError*>(&e) || dynamic_cast<const PhaseSumError*>(&e)) return kExitParity;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidArgument*>(&e) ||
      dynamic_cast<const DimensionError*>(&e)) {
    return kExitUsage;
  }
  return kExitAssertion;
}

int run(int argc, char** argv) {
  CLI::App app{"Multi-qubit CHSH toolkit: Bell values, two-qubit reduction, degeneracy and games."};
  app.set_version_flag("--version", GHZBELL_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  bool timing = false;
  int threads = 1;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--timing", timing, "Record wall time in the manifest (breaks byte-identical output)");
  app.add_option("--threads", threads, "Worker threads for sampling commands")
      ->envname("BELL_THREADS")
      ->check(CLI::Range(1, 1024));

  std::string config_path;
  auto* eval = app.add_subcommand("eval", "Evaluate <G|I|G> for a configuration");
  eval->add_option("--config", config_path, "Configuration file")->required();
  auto* reduce = app.add_subcommand("reduce", "Reduce a configuration to two qubits");
  reduce->add_option("--config", config_path, "Configuration file")->required();

  int family = 1;
  int n = 4;
  std::vector<double> phi_primes;
  bool skip_spectral = false;
  auto* degeneracy = app.add_subcommand("degeneracy", "Enumerate the degenerate top eigenspace");
  degeneracy->add_option("--case", family, "Canonical family")->check(CLI::IsMember({1, 5}));
  degeneracy->add_option("--n", n, "Number of qubits")->required();
  degeneracy->add_option("--phi-primes", phi_primes, "Case 5 phases, comma separated")->delimiter(',');
  degeneracy->add_flag("--skip-spectral", skip_spectral, "Do not diagonalize the dense operator");

  std::string strategy = "optimal";
  std::string game_name = "chsh";
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  auto* game = app.add_subcommand("game", "Exact and sampled CHSH / CHSH* values");
  game->add_option("--strategy", strategy, "identity, optimal or file:<path>");
  game->add_option("--game", game_name, "Game variant")->check(CLI::IsMember({"chsh", "chsh_star"}));
  game->add_option("--shots", shots, "Monte-Carlo shots")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  game->add_option("--seed", seed, "Monte-Carlo seed");

  std::vector<int> n_values;
  std::uint64_t samples = 10000;
  auto* scan = app.add_subcommand("scan", "Random search for reduction counterexamples");
  scan->add_option("--n", n_values, "Qubit counts, comma separated")->delimiter(',')->required();
  scan->add_option("--samples", samples, "Samples per n")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  scan->add_option("--seed", seed, "Sampling seed");

  auto* example = app.add_subcommand("example-n4", "Reproduce the four-qubit worked example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  std::string command;
  try {
    if (*eval) {
      command = "eval";
      outcome = run_eval(config_path);
    } else if (*reduce) {
      command = "reduce";
      outcome = run_reduce(config_path);
    } else if (*degeneracy) {
      command = "degeneracy";
      outcome = run_degeneracy(family, n, phi_primes, !skip_spectral);
    } else if (*game) {
      command = "game";
      outcome = run_game(strategy, game_name, shots, seed, threads);
    } else if (*scan) {
      command = "scan";
      outcome = run_scan(n_values, samples, seed, threads);
    } else if (*example) {
      command = "example-n4";
      outcome = run_example_n4();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }

  RunManifest manifest;
  manifest.command = command;
  manifest.config_digest = digest_of(outcome.digest_input);
  manifest.seed = outcome.seed;
  manifest.tool_version = GHZBELL_VERSION;
  if (timing) {
    manifest.wall_time_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }

  Json report;
  report["manifest"] = to_json(manifest);
  report["passed"] = outcome.passed;
  report["result"] = outcome.result;
  if (format == "csv") {
    std::cout << to_csv(report);
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return outcome.passed ? kExitOk : kExitAssertion;
}

}  // namespace
}  // namespace ghzbell::cli

int main(int argc, char** argv) { return ghzbell::cli::run(argc, argv); }
