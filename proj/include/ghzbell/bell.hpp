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

#pragma once

// Generalized CHSH function on GHZ states and its reduction to the
// two-qubit CHSH function on |psi+>.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ghzbell/qops.hpp"
#include "ghzbell/random.hpp"

namespace ghzbell {

using Direction = MeasurementDirection<double>;
using Vector3d = Vector3<double>;
using State = StateVector<double>;
using Operator = HermitianOperator<double>;

/// Measurement settings of the N-qubit CHSH function: Alice holds qubits
/// 1..n-1 and measures the product of a0 (or a1) observables, Bob holds
/// qubit n and measures b0 (or b1).
class BellConfig {
 public:
  BellConfig(std::vector<Direction> a0, std::vector<Direction> a1, Direction b0, Direction b1);

  int n() const { return static_cast<int>(a0_.size()) + 1; }
  const std::vector<Direction>& a0() const { return a0_; }
  const std::vector<Direction>& a1() const { return a1_; }
  const Direction& b0() const { return b0_; }
  const Direction& b1() const { return b1_; }

  const std::vector<Direction>& alice(int a) const { return a == 0 ? a0_ : a1_; }
  const Direction& bob(int b) const { return b == 0 ? b0_ : b1_; }

 private:
  std::vector<Direction> a0_;
  std::vector<Direction> a1_;
  Direction b0_;
  Direction b1_;
};

/// Bloch vectors of a two-qubit CHSH measurement.
struct TwoQubitConfig {
  TwoQubitConfig(const Vector3d& a0, const Vector3d& a1, const Vector3d& b0, const Vector3d& b1);

  const Vector3d& alice(int a) const { return a == 0 ? a0 : a1; }
  const Vector3d& bob(int b) const { return b == 0 ? b0 : b1; }

  Vector3d a0, a1, b0, b1;
};

/// Image of an (n-1)-qubit product observable under Gamma: a unit Bloch
/// direction plus the normalizer that rescales the GHZ projection onto it.
struct GammaImage {
  Vector3d direction;
  double normalizer;
};

struct ReductionReport {
  TwoQubitConfig two_qubit;
  double eps;
  double eps_prime;
  double i_n;
  double i_2;
};

struct ReductionOptions {
  /// Odd n: reject sin(alpha_N) ~ 0 instead of projecting Bob's direction.
  bool require_bob_off_axis = true;
  double degenerate_tol = 1e-9;
};

/// (|0...0> + |1...1>)/sqrt(2); |+> for n = 1 and |psi+> for n = 2.
State ghz_state(int n);

/// A0 (x) (B0 + B1) + A1 (x) (B0 - B1) as a dense 2^n operator.
Operator bell_operator(const BellConfig& cfg);

/// Operator of the two-qubit CHSH function for the given Bloch vectors.
Operator two_qubit_operator(const TwoQubitConfig& cfg);

/// <G| X_1 (x) ... (x) X_n |G> in closed form for the given directions.
double closed_form_expectation(std::span<const Direction> dirs);

/// The four correlators <A_a (x) B_b> on the GHZ state, indexed [a][b].
std::array<std::array<double, 2>, 2> ghz_correlators(const BellConfig& cfg);

/// <I^N> on the GHZ state from the closed-form correlators.
double closed_form_bell_value(const BellConfig& cfg);

/// <psi+| (a.sigma) (x) (b.sigma) |psi+> = a_x b_x - a_y b_y + a_z b_z.
double psi_plus_correlation(const Vector3d& a, const Vector3d& b);

std::array<std::array<double, 2>, 2> psi_plus_correlators(const TwoQubitConfig& cfg);

GammaImage gamma_map(std::span<const Direction> dirs, double degenerate_tol = 1e-9);

/// Projection onto the equator: (cos phi, sin phi, 0).
Vector3d theta_map(const Direction& dir);

ReductionReport reduce_to_two_qubit(const BellConfig& cfg, const ReductionOptions& options = {});

/// <I^2> on |psi+>.
double two_qubit_chsh_value(const TwoQubitConfig& cfg);

/// Directions uniform on the sphere (cos alpha uniform, phi uniform).
Direction random_direction(Rng& rng);
BellConfig random_config(int n, Rng& rng);

struct ScanOptions {
  std::vector<int> n_values;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  int threads = 1;
  double tol = 1e-9;
};

struct ScanRow {
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t violating_positive = 0;  // i_n > 2
  std::uint64_t violating_negative = 0;  // i_n < -2
  std::uint64_t excluded = 0;            // zero-measure set hit
  std::uint64_t counterexamples = 0;
  /// max over violating samples of (i_n - i_2) for i_n > 2 and
  /// (i_2 - i_n) for i_n < -2; <= tol when the property holds.
  double max_gap_violation = 0;
  double max_i_n = 0;
  double min_i_n = 0;
};

struct ScanReport {
  std::vector<ScanRow> rows;

  bool passed() const {
    for (const auto& r : rows) {
      if (r.counterexamples != 0) return false;
    }
    return true;
  }
};

/// Checks i_n > 2 => i_2 >= i_n and i_n < -2 => i_2 <= i_n on random
/// configurations. Sample k for qubit count n draws from the substream
/// (seed, n, k), so the report does not depend on the thread count.
ScanReport reduction_scan(const ScanOptions& options);

}  // namespace ghzbell
