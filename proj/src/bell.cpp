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

#include "ghzbell/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ghzbell/parallel.hpp"

namespace ghzbell {

namespace {

Operator product_observable(std::span<const Direction> dirs) {
  std::vector<Operator> factors;
  factors.reserve(dirs.size());
  for (const auto& d : dirs) factors.push_back(pauli_observable(d));
  return tensor(std::span<const Operator>(factors));
}

void check_unit(const Vector3d& v, const char* name) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kAlgebraicTol) {
    throw InvalidArgument(std::string("Bloch vector ") + name + " is not a unit vector");
  }
}

}  // namespace

BellConfig::BellConfig(std::vector<Direction> a0, std::vector<Direction> a1, Direction b0,
                       Direction b1)
    : a0_(std::move(a0)), a1_(std::move(a1)), b0_(b0), b1_(b1) {
  if (a0_.empty()) throw InvalidArgument("a Bell configuration needs n >= 2 qubits");
  if (a0_.size() != a1_.size()) {
    throw InvalidArgument("a0 and a1 must both list n-1 directions");
  }
  detail::check_qubit_count(n());
}

TwoQubitConfig::TwoQubitConfig(const Vector3d& a0_, const Vector3d& a1_, const Vector3d& b0_,
                               const Vector3d& b1_)
    : a0(a0_), a1(a1_), b0(b0_), b1(b1_) {
  check_unit(a0, "a0");
  check_unit(a1, "a1");
  check_unit(b0, "b0");
  check_unit(b1, "b1");
}

State ghz_state(int n) {
  detail::check_qubit_count(n);
  CVector<double> v = CVector<double>::Zero(detail::side_of(n));
  v(0) = v(v.size() - 1) = 1.0 / std::numbers::sqrt2;
  return State(std::move(v));
}

Operator bell_operator(const BellConfig& cfg) {
  const Operator a0 = product_observable(cfg.a0());
  const Operator a1 = product_observable(cfg.a1());
  const Operator b0 = pauli_observable(cfg.b0());
  const Operator b1 = pauli_observable(cfg.b1());
  return kron(a0, b0 + b1) + kron(a1, b0 - b1);
}

Operator two_qubit_operator(const TwoQubitConfig& cfg) {
  const Operator a0 = pauli_observable(cfg.a0);
  const Operator a1 = pauli_observable(cfg.a1);
  const Operator b0 = pauli_observable(cfg.b0);
  const Operator b1 = pauli_observable(cfg.b1);
  return kron(a0, b0 + b1) + kron(a1, b0 - b1);
}

double closed_form_expectation(std::span<const Direction> dirs) {
  if (dirs.empty()) throw InvalidArgument("closed form needs at least one direction");
  detail::check_qubit_count(static_cast<int>(dirs.size()));
  double prod_cos = 1.0;
  double prod_sin = 1.0;
  double phase = 0.0;
  for (const auto& d : dirs) {
    prod_cos *= std::cos(d.alpha());
    prod_sin *= std::sin(d.alpha());
    phase += d.phi();
  }
  const double even = dirs.size() % 2 == 0 ? 1.0 : 0.0;
  return even * prod_cos + std::cos(phase) * prod_sin;
}

std::array<std::array<double, 2>, 2> ghz_correlators(const BellConfig& cfg) {
  std::array<std::array<double, 2>, 2> t{};
  std::vector<Direction> dirs(cfg.a0().begin(), cfg.a0().end());
  dirs.emplace_back();
  for (int a = 0; a < 2; ++a) {
    std::copy(cfg.alice(a).begin(), cfg.alice(a).end(), dirs.begin());
    for (int b = 0; b < 2; ++b) {
      dirs.back() = cfg.bob(b);
      t[a][b] = closed_form_expectation(dirs);
    }
  }
  return t;
}

double closed_form_bell_value(const BellConfig& cfg) {
  const auto t = ghz_correlators(cfg);
  return t[0][0] + t[0][1] + t[1][0] - t[1][1];
}

double psi_plus_correlation(const Vector3d& a, const Vector3d& b) {
  return a.x() * b.x() - a.y() * b.y() + a.z() * b.z();
}

std::array<std::array<double, 2>, 2> psi_plus_correlators(const TwoQubitConfig& cfg) {
  std::array<std::array<double, 2>, 2> t{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) t[a][b] = psi_plus_correlation(cfg.alice(a), cfg.bob(b));
  }
  return t;
}

GammaImage gamma_map(std::span<const Direction> dirs, double degenerate_tol) {
  if (dirs.empty()) throw InvalidArgument("Gamma needs at least one direction");
  double prod_cos = 1.0;
  double prod_sin = 1.0;
  double beta = 0.0;
  for (const auto& d : dirs) {
    prod_cos *= std::cos(d.alpha());
    prod_sin *= std::sin(d.alpha());
    beta += d.phi();
  }
  const double weight = prod_cos * prod_cos + prod_sin * prod_sin;
  if (weight <= degenerate_tol) {
    throw DegenerateDirectionError(
        "product observable has vanishing projection onto span{|0...0>, |1...1>} (weight " +
        std::to_string(weight) + ")");
  }
  const double eps = 1.0 / std::sqrt(weight);
  const double sin_g = eps * prod_sin;
  const double cos_g = eps * prod_cos;
  return {Vector3d(sin_g * std::cos(beta), sin_g * std::sin(beta), cos_g), eps};
}

Vector3d theta_map(const Direction& dir) {
  return Vector3d(std::cos(dir.phi()), std::sin(dir.phi()), 0.0);
}

ReductionReport reduce_to_two_qubit(const BellConfig& cfg, const ReductionOptions& options) {
  const GammaImage g0 = gamma_map(cfg.a0(), options.degenerate_tol);
  const GammaImage g1 = gamma_map(cfg.a1(), options.degenerate_tol);
  Vector3d b0 = cfg.b0().bloch();
  Vector3d b1 = cfg.b1().bloch();
  if (cfg.n() % 2 == 1) {
    if (options.require_bob_off_axis) {
      for (const Direction* d : {&cfg.b0(), &cfg.b1()}) {
        if (std::abs(std::sin(d->alpha())) <= options.degenerate_tol) {
          throw DegenerateDirectionError("odd n: Bob's direction lies on the z axis");
        }
      }
    }
    b0 = theta_map(cfg.b0());
    b1 = theta_map(cfg.b1());
  }
  TwoQubitConfig two(g0.direction, g1.direction, b0, b1);
  const double i_2 = two_qubit_chsh_value(two);
  return {two, g0.normalizer, g1.normalizer, closed_form_bell_value(cfg), i_2};
}

double two_qubit_chsh_value(const TwoQubitConfig& cfg) {
  const auto t = psi_plus_correlators(cfg);
  return t[0][0] + t[0][1] + t[1][0] - t[1][1];
}

Direction random_direction(Rng& rng) {
  const double cos_alpha = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return Direction(std::acos(cos_alpha), phi);
}

BellConfig random_config(int n, Rng& rng) {
  if (n < 2) throw InvalidArgument("random configuration needs n >= 2");
  std::vector<Direction> a0, a1;
  for (int j = 0; j < n - 1; ++j) a0.push_back(random_direction(rng));
  for (int j = 0; j < n - 1; ++j) a1.push_back(random_direction(rng));
  const Direction b0 = random_direction(rng);
  const Direction b1 = random_direction(rng);
  return BellConfig(std::move(a0), std::move(a1), b0, b1);
}

ScanReport reduction_scan(const ScanOptions& options) {
  if (options.samples < 1) throw InvalidArgument("scan needs at least one sample");
  if (options.n_values.empty()) throw InvalidArgument("scan needs at least one qubit count");

  struct Sample {
    double i_n = 0;
    double i_2 = 0;
    bool excluded = false;
  };

  ScanReport report;
  for (int n : options.n_values) {
    if (n < 2) throw InvalidArgument("scan qubit counts must be >= 2");
    detail::check_qubit_count(n);

    std::vector<Sample> samples(options.samples);
    const ReductionOptions lenient{.require_bob_off_axis = false};
    parallel_for(samples.size(), options.threads, [&](std::size_t k) {
      Rng rng({options.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)});
      const BellConfig cfg = random_config(n, rng);
      try {
        const ReductionReport r = reduce_to_two_qubit(cfg, lenient);
        samples[k] = {r.i_n, r.i_2, false};
      } catch (const DegenerateDirectionError&) {
        samples[k] = {closed_form_bell_value(cfg), 0.0, true};
      }
    });

    ScanRow row;
    row.n = n;
    row.samples = options.samples;
    row.max_i_n = -std::numeric_limits<double>::infinity();
    row.min_i_n = std::numeric_limits<double>::infinity();
    double worst = -std::numeric_limits<double>::infinity();
    for (const Sample& s : samples) {
      row.max_i_n = std::max(row.max_i_n, s.i_n);
      row.min_i_n = std::min(row.min_i_n, s.i_n);
      if (s.excluded) {
        ++row.excluded;
        continue;
      }
      double gap;
      if (s.i_n > 2.0) {
        ++row.violating_positive;
        gap = s.i_n - s.i_2;
      } else if (s.i_n < -2.0) {
        ++row.violating_negative;
        gap = s.i_2 - s.i_n;
      } else {
        continue;
      }
      worst = std::max(worst, gap);
      if (gap > options.tol) ++row.counterexamples;
    }
    row.max_gap_violation = std::isfinite(worst) ? worst : 0.0;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace ghzbell
