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

// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "ghzbell/bell.hpp"
#include "ghzbell/degeneracy.hpp"
#include "ghzbell/games.hpp"

using namespace ghzbell;

namespace {

const double kTsirelson = 2 * std::numbers::sqrt2;

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, const std::function<Verdict()>& body, double time_limit_s = 0) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0 && secs >= time_limit_s) {
    v.pass = false;
    v.detail += fmt("; runtime %.2f s exceeds %.0f s", secs, time_limit_s);
  }
  if (!v.pass) ++failures;
  std::printf("criterion %d %s %s [%.2f s] %s\n", id, v.pass ? "PASS" : "FAIL", title, secs, v.detail.c_str());
  std::fflush(stdout);
}

Verdict tsirelson_saturation() {
  const BellConfig cfg = example_n4_config();
  const double value = expectation(ghz_state(4), bell_operator(cfg));
  const ReductionReport r = reduce_to_two_qubit(cfg);
  const double e1 = std::abs(value - kTsirelson);
  const double e2 = std::abs(r.i_2 - kTsirelson);
  return {e1 < 1e-10 && e2 < 1e-10, fmt("|I4 - 2sqrt2| = %.2e, |i_2 - 2sqrt2| = %.2e", e1, e2)};
}

Verdict degeneracy_law() {
  Verdict v;
  for (int n = 4; n <= 12; n += 2) {
    const DegeneracyReport r = degenerate_basis_case1(n);
    const int expected = 1 << (n - 2);
    const int spectral = r.spectral_multiplicity.value_or(-1);
    const bool ok = r.multiplicity == expected && spectral == expected && r.eigenstates_verified();
    v.pass = v.pass && ok;
    v.detail += fmt("n=%d: %d/%d/%d%s ", n, r.multiplicity, spectral, expected, ok ? "" : " (mismatch)");
  }
  v.detail += "(combinatorial/spectral/2^(n-2))";
  return v;
}

Verdict example_reproduction() {
  const ExampleN4Report ex = reproduce_example_n4();
  Verdict v{ex.fidelities.size() == 4 && ex.degeneracy.multiplicity == 4, ""};
  double worst = 1;
  for (double f : ex.fidelities) worst = std::min(worst, f);
  v.pass = v.pass && worst >= 1 - 1e-10 && ex.degeneracy.passed();
  v.detail = fmt("4 states, min overlap modulus %.15f, spectral multiplicity %d", worst,
                 ex.degeneracy.spectral_multiplicity.value_or(-1));
  return v;
}

Verdict reduction_property() {
  ScanOptions opts;
  opts.n_values = {3, 4, 5, 6};
  opts.samples = 10000;
  opts.seed = 2024;
  const ScanReport report = reduction_scan(opts);
  Verdict v{report.passed(), ""};
  for (const ScanRow& r : report.rows) {
    v.detail += fmt("n=%d: %llu+/%llu- violating, %llu counterexamples; ", r.n,
                    static_cast<unsigned long long>(r.violating_positive),
                    static_cast<unsigned long long>(r.violating_negative),
                    static_cast<unsigned long long>(r.counterexamples));
  }
  return v;
}

Verdict game_equivalence() {
  Rng rng(505);
  double worst_i = 0;
  double worst_p = 0;
  for (int k = 0; k < 200; ++k) {
    const ChshStrategy s = random_strategy(rng);
    const GameOutcomeTable one = chsh_game_value(s);
    const GameOutcomeTable two = chsh_star_value(s);
    worst_i = std::max(worst_i, std::abs(one.i_value - two.i_value));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        worst_p = std::max(worst_p, std::abs(one.win_probability[a][b] - two.win_probability[a][b]));
  }
  const double optimal = (2 + std::numbers::sqrt2) / 4;
  const double exact_err = std::abs(chsh_game_value(ChshStrategy::optimal()).success_probability - optimal);
  const MonteCarloEstimate mc = play_monte_carlo(ChshStrategy::optimal(), Game::Chsh, 100000, 42);
  const double z = std::abs(mc.estimate - optimal) / mc.standard_error;
  return {worst_i < 1e-12 && worst_p < 1e-12 && exact_err < 1e-12 && z <= 5,
          fmt("max |I1 - I2| = %.2e, max win gap = %.2e, optimal error = %.2e, MC %.5f (%.2f se)", worst_i, worst_p,
              exact_err, mc.estimate, z)};
}

Verdict closed_form_oracle() {
  Rng rng(606);
  double worst = 0;
  for (int n = 2; n <= 8; ++n) {
    const State g = ghz_state(n);
    for (int k = 0; k < 1000; ++k) {
      std::vector<Direction> dirs;
      std::vector<Operator> ops;
      for (int j = 0; j < n; ++j) {
        dirs.push_back(random_direction(rng));
        ops.push_back(pauli_observable(dirs.back()));
      }
      worst = std::max(worst, std::abs(closed_form_expectation(dirs) - expectation(g, tensor<double>(ops))));
    }
  }
  return {worst < 1e-12, fmt("7000 angle sets, max deviation %.2e", worst)};
}

Verdict robustness() {
  Verdict v;
  double worst = 0;
  int runs = 0;
  for (int n : {4, 6}) {
    for (const DegeneracyReport& r : {degenerate_basis_case1(n), degenerate_basis_case5(n, default_case5_phases(n))}) {
      const auto m = static_cast<std::size_t>(r.multiplicity);
      const std::vector<double> uniform(m, 1.0 / static_cast<double>(m));
      const RobustnessResult mixed = robustness_experiment(r, uniform, false);
      worst = std::max(worst, std::abs(mixed.value - kTsirelson));
      ++runs;
      Rng rng({707, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r.construction)});
      for (int k = 0; k < 20; ++k) {
        std::vector<double> w(m);
        double total = 0;
        for (auto& x : w) total += (x = rng.uniform());
        for (auto& x : w) x /= total;
        const RobustnessResult sup = robustness_experiment(r, w, true, rng.below(1u << 30));
        worst = std::max(worst, std::abs(sup.value - kTsirelson));
        ++runs;
      }
    }
  }
  v.pass = worst < 1e-10;
  v.detail = fmt("%d mixtures/superpositions over case-1 and case-5 bases at n=4,6, max deviation %.2e", runs, worst);
  return v;
}

Verdict symmetry_suite() {
  Verdict v;
  std::string failed;
  int checked = 0;
  for (int n : {4, 6, 8}) {
    for (int nu = 1; nu <= 6; ++nu) {
      const SymmetryCheck c = verify_ghz_symmetry(CanonicalCase::Case1, nu, n);
      ++checked;
      if (!c.holds) failed += fmt("case1 nu=%d n=%d |.|=%.6f; ", nu, n, c.modulus);
    }
  }
  for (int n : {3, 4, 5}) {
    for (int mu : {5, 6}) {
      const SymmetryCheck c = verify_ghz_symmetry(CanonicalCase::Case5, mu, n);
      ++checked;
      if (!c.holds) failed += fmt("case5 mu=%d n=%d |.|=%.6f; ", mu, n, c.modulus);
    }
  }
  v.pass = failed.empty();
  v.detail = fmt("%d label/size pairs checked", checked);
  if (!failed.empty()) v.detail += "; modulus != 1 for: " + failed;
  return v;
}

}  // namespace

int main() {
  criterion(1, "Tsirelson saturation of the n=4 example", tsirelson_saturation, 1.0);
  criterion(2, "degeneracy law 2^(n-2), n=4..12", degeneracy_law, 120.0);
  criterion(3, "n=4 degenerate states reproduced", example_reproduction);
  criterion(4, "two-qubit reduction dominates, n=3..6", reduction_property, 60.0);
  criterion(5, "CHSH / CHSH* equivalence", game_equivalence);
  criterion(6, "closed-form GHZ correlator vs matrix", closed_form_oracle);
  criterion(7, "robust violation on the degenerate subspace", robustness);
  criterion(8, "GHZ symmetry under the u/v families", symmetry_suite);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
