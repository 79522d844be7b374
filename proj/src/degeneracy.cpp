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

#include "ghzbell/degeneracy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace ghzbell {

namespace {

using M2 = Matrix2c<double>;
constexpr double kPi = std::numbers::pi;

M2 rz(double delta) { return pauli::exp_half_angle<double>(Vector3d::UnitZ(), delta); }

// Distance of `angle` from the nearest multiple of `period`.
double distance_to_multiple(double angle, double period) {
  double r = std::fmod(angle, period);
  if (r < 0) r += period;
  return std::min(r, period - r);
}

// +1 for sum = pi/2, -1 for sum = -pi/2 (mod 2pi); 0 otherwise.
int phase_sum_sign(const std::vector<double>& phi_primes, double tol) {
  double sum = 0;
  for (double p : phi_primes) sum += p;
  if (distance_to_multiple(sum - kPi / 2, 2 * kPi) <= tol) return 1;
  if (distance_to_multiple(sum + kPi / 2, 2 * kPi) <= tol) return -1;
  return 0;
}

std::vector<int> subset_of_mask(std::uint32_t mask, int n_alice) {
  std::vector<int> k;
  for (int j = 0; j < n_alice; ++j) {
    if (mask & (1u << j)) k.push_back(j + 1);
  }
  return k;
}

void sort_subsets(std::vector<std::vector<int>>& subsets) {
  std::sort(subsets.begin(), subsets.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
}

void check_subset(int n, const std::vector<int>& subset) {
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("subset lists a qubit twice");
  }
  for (int k : sorted) {
    if (k < 1 || k > n - 1) {
      throw InvalidArgument("subset element " + std::to_string(k) + " outside {1, ..., n-1}");
    }
  }
}

Direction conjugated(const Direction& d, const M2& u) {
  const M2 obs = pauli::dot<double>(d.bloch());
  return Direction::from_bloch(bloch_vector<double>(u.adjoint() * obs * u));
}

DegeneracyReport build_report(const BellConfig& cfg, std::vector<State> basis,
                              std::vector<std::vector<int>> subsets,
                              BasisConstruction construction, const DegeneracyOptions& options) {
  DegeneracyReport report{cfg};
  report.construction = construction;
  report.subsets = std::move(subsets);
  report.multiplicity = static_cast<int>(basis.size());

  const double target = closed_form_bell_value(cfg);
  report.max_eigenvalue = target;
  for (const State& psi : basis) {
    const CVector<double> image = apply_bell_operator(cfg, psi);
    report.max_residual =
        std::max(report.max_residual, (image - target * psi.amplitudes()).norm());
  }

  if (!basis.empty()) {
    CMatrix<double> columns(basis.front().dim(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      columns.col(static_cast<Eigen::Index>(i)) = basis[i].amplitudes();
    }
    const CMatrix<double> gram = columns.adjoint() * columns;
    report.orthonormality_defect =
        (gram - CMatrix<double>::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  }
  report.basis = std::move(basis);

  if (options.spectral_check) {
    const RVector<double> values = eigenvalues_hermitian(bell_operator(cfg));
    report.spectral_multiplicity = multiplicity_of_max(values, options.tol);
    report.max_eigenvalue = values.maxCoeff();
  }
  return report;
}

}  // namespace

TsirelsonClass classify_saturating_config(const BellConfig& cfg, double value_tol,
                                          double geometry_tol) {
  const double value = closed_form_bell_value(cfg);
  if (std::abs(std::abs(value) - 2 * std::numbers::sqrt2) > value_tol) {
    throw NotSaturatingError("configuration gives <I^N> = " + std::to_string(value) +
                             ", not +-2 sqrt 2");
  }
  const auto along_z = [&](const std::vector<Direction>& dirs) {
    return std::all_of(dirs.begin(), dirs.end(),
                       [&](const Direction& d) { return std::abs(std::sin(d.alpha())) <= geometry_tol; });
  };
  const auto equatorial = [&](const std::vector<Direction>& dirs) {
    return std::all_of(dirs.begin(), dirs.end(),
                       [&](const Direction& d) { return std::abs(std::cos(d.alpha())) <= geometry_tol; });
  };

  TsirelsonCase kind;
  if (along_z(cfg.a0()) && equatorial(cfg.a1())) {
    kind = TsirelsonCase::CaseI;
  } else if (equatorial(cfg.a0()) && along_z(cfg.a1())) {
    kind = TsirelsonCase::CaseII;
  } else if (equatorial(cfg.a0()) && equatorial(cfg.a1())) {
    kind = TsirelsonCase::CaseIII;
  } else {
    throw InconsistentConfigError(
        "saturating configuration with Alice directions neither along z nor equatorial");
  }
  if (cfg.n() % 2 == 1 && kind != TsirelsonCase::CaseIII) {
    throw InconsistentConfigError("odd n saturating configuration outside the equatorial case");
  }

  const Vector3d a0 = gamma_map(cfg.a0()).direction;
  const Vector3d a1 = gamma_map(cfg.a1()).direction;
  double sign = 0;
  switch (kind) {
    case TsirelsonCase::CaseI: sign = a0.z(); break;
    case TsirelsonCase::CaseII: sign = a1.z(); break;
    case TsirelsonCase::CaseIII: sign = a0.cross(a1).z(); break;
  }
  return {kind, sign > 0 ? Orientation::Plus : Orientation::Minus};
}

std::vector<double> default_case5_phases(int n) {
  if (n < 2) throw InvalidArgument("Case5 needs n >= 2");
  std::vector<double> phases(static_cast<std::size_t>(n - 1), 0.0);
  phases.back() = kPi / 2;
  return phases;
}

BellConfig canonical_config(CanonicalCase family, int n,
                            std::optional<std::vector<double>> phi_primes) {
  if (n < 2) throw InvalidArgument("canonical configurations need n >= 2");
  detail::check_qubit_count(n);
  const auto alice = static_cast<std::size_t>(n - 1);
  if (family == CanonicalCase::Case1) {
    if (n % 2 != 0) throw ParityError("Case1 exists only for even n, got n = " + std::to_string(n));
    return BellConfig(std::vector<Direction>(alice, Direction(0, 0)),
                      std::vector<Direction>(alice, Direction(kPi / 2, 0)),
                      Direction(kPi / 4, 0), Direction(kPi / 4, kPi));
  }

  const std::vector<double> phases = phi_primes ? *phi_primes : default_case5_phases(n);
  if (phases.size() != alice) {
    throw InvalidArgument("Case5 needs n-1 primed phases, got " + std::to_string(phases.size()));
  }
  const int s = phase_sum_sign(phases, 1e-9);
  if (s == 0) throw PhaseSumError("Case5 primed phases must sum to +-pi/2 (mod 2pi)");
  std::vector<Direction> a1;
  for (double p : phases) a1.emplace_back(kPi / 2, p);
  return BellConfig(std::vector<Direction>(alice, Direction(kPi / 2, 0)), std::move(a1),
                    Direction(kPi / 2, -s * kPi / 4), Direction(kPi / 2, s * kPi / 4));
}

SymmetryTriple symmetry_triple(CanonicalCase family, int nu, int n) {
  const M2 id = pauli::identity<double>();
  const M2 sx = pauli::x<double>();
  const M2 sz = pauli::z<double>();

  if (family == CanonicalCase::Case5) {
    if (nu != 5 && nu != 6) throw InvalidArgument("Case5 labels are 5 and 6");
    const Unitary u(nu == 5 ? id : sx);
    return {u, u, Unitary(sx) * u, family, nu};
  }

  if (nu < 1 || nu > 6) throw InvalidArgument("Case1 labels are 1..6");
  if (n % 2 != 0) throw ParityError("Case1 exists only for even n");
  std::array<Unitary, 7> u;
  u[1] = Unitary(id);
  u[2] = Unitary(sx);
  u[3] = Unitary(pauli::exp_half_angle<double>(Vector3d::UnitY(), kPi / 2));
  u[4] = Unitary(sz) * u[3];
  u[5] = Unitary(pauli::exp_half_angle<double>(Vector3d::UnitX(), -kPi / 2));
  u[6] = Unitary(sx) * u[5];

  Unitary v = u[nu];
  if (nu >= 5 && (n / 2) % 2 == 0) v = u[11 - nu];
  const Unitary flip(nu == 3 || nu == 4 ? sz : sx);
  return {u[nu], v, flip * v, family, nu};
}

SymmetryCheck verify_ghz_symmetry(CanonicalCase family, int nu, int n, double tol) {
  const SymmetryTriple t = symmetry_triple(family, nu, n);
  std::vector<Unitary> factors(static_cast<std::size_t>(n - 1), t.v);
  factors.push_back(t.u.conjugate());
  const State g = ghz_state(n);
  const double modulus = std::abs(overlap(g, apply_local<double>(g, factors)));
  return {modulus, std::abs(modulus - 1.0) <= tol};
}

State flip_state(int n, const std::vector<int>& subset) {
  check_subset(n, subset);
  std::vector<int> qubits;
  for (int k : subset) qubits.push_back(k - 1);
  return flip_qubits<double>(ghz_state(n), qubits);
}

CVector<double> apply_bell_operator(const BellConfig& cfg, const State& psi) {
  const int n = cfg.n();
  if (psi.n_qubits() != n) throw DimensionError("state and configuration differ in qubit count");
  CVector<double> out = CVector<double>::Zero(psi.dim());
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      CVector<double> v = psi.amplitudes();
      for (int j = 0; j < n - 1; ++j) {
        apply_on_qubit<double>(v, n, pauli::dot<double>(cfg.alice(a)[j].bloch()), j);
      }
      apply_on_qubit<double>(v, n, pauli::dot<double>(cfg.bob(b).bloch()), n - 1);
      if (a & b) {
        out -= v;
      } else {
        out += v;
      }
    }
  }
  return out;
}

std::vector<std::vector<int>> even_subsets(int n_alice) {
  if (n_alice < 1 || n_alice >= kMaxQubits) throw InvalidArgument("subset universe out of range");
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << n_alice); ++mask) {
    if (std::popcount(mask) % 2 == 0) out.push_back(subset_of_mask(mask, n_alice));
  }
  sort_subsets(out);
  return out;
}

std::vector<std::vector<int>> admissible_subsets(const std::vector<double>& phi_primes, double tol) {
  const int n_alice = static_cast<int>(phi_primes.size());
  if (n_alice < 1 || n_alice >= kMaxQubits) throw InvalidArgument("subset universe out of range");
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << n_alice); ++mask) {
    double sum = 0;
    for (int j = 0; j < n_alice; ++j) {
      if (mask & (1u << j)) sum += phi_primes[static_cast<std::size_t>(j)];
    }
    if (distance_to_multiple(sum, kPi) <= tol) out.push_back(subset_of_mask(mask, n_alice));
  }
  sort_subsets(out);
  return out;
}

bool complement_exclusion_holds(const std::vector<double>& phi_primes, double tol) {
  const int n_alice = static_cast<int>(phi_primes.size());
  const std::uint32_t full = (1u << n_alice) - 1;
  const auto admissible = [&](std::uint32_t mask) {
    double sum = 0;
    for (int j = 0; j < n_alice; ++j) {
      if (mask & (1u << j)) sum += phi_primes[static_cast<std::size_t>(j)];
    }
    return distance_to_multiple(sum, kPi) <= tol;
  };
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (admissible(mask) && admissible(full & ~mask)) return false;
  }
  return true;
}

DegeneracyReport degenerate_basis_case1(int n, const DegeneracyOptions& options) {
  const BellConfig cfg = canonical_config(CanonicalCase::Case1, n);
  auto subsets = even_subsets(n - 1);
  std::vector<State> basis;
  basis.reserve(subsets.size());
  for (const auto& k : subsets) basis.push_back(flip_state(n, k));
  return build_report(cfg, std::move(basis), std::move(subsets), BasisConstruction::Case1Flips,
                      options);
}

DegeneracyReport degenerate_basis_case5(int n, const std::vector<double>& phi_primes,
                                        const DegeneracyOptions& options) {
  const BellConfig cfg = canonical_config(CanonicalCase::Case5, n, phi_primes);
  auto subsets = admissible_subsets(phi_primes);
  std::vector<State> basis;
  basis.reserve(subsets.size());
  for (const auto& k : subsets) basis.push_back(flip_state(n, k));
  return build_report(cfg, std::move(basis), std::move(subsets), BasisConstruction::Case5Subsets,
                      options);
}

DegeneracyReport spectral_degeneracy(const BellConfig& cfg, double tol) {
  const auto eig = eig_hermitian(bell_operator(cfg));
  const int mult = multiplicity_of_max(eig.values, tol);
  std::vector<State> basis;
  for (int k = 0; k < mult; ++k) {
    basis.emplace_back(CVector<double>(eig.vectors.col(eig.vectors.cols() - 1 - k)), 1e-10);
  }
  DegeneracyReport report{cfg};
  report.construction = BasisConstruction::SpectralOnly;
  report.multiplicity = mult;
  report.max_eigenvalue = eig.values.maxCoeff();
  report.spectral_multiplicity = mult;
  for (const State& psi : basis) {
    report.max_residual = std::max(
        report.max_residual,
        (apply_bell_operator(cfg, psi) - report.max_eigenvalue * psi.amplitudes()).norm());
  }
  report.basis = std::move(basis);
  return report;
}

BellConfig example_n4_config() {
  const double h = kPi / 2;
  return BellConfig({Direction(h, 0), Direction(h, 0), Direction(h, -kPi / 4)},
                    {Direction(h, h), Direction(h, h), Direction(h, kPi / 4)}, Direction(h, h),
                    Direction(h, 0));
}

ExampleN4Report reproduce_example_n4() {
  const BellConfig original = example_n4_config();
  const M2 tau3 = pauli::exp_half_angle<double>(Vector3d::UnitZ(), kPi / 4);
  const M2 tau4 = pauli::exp_half_angle<double>(Vector3d::UnitZ(), -kPi / 4);

  std::vector<Direction> a0 = original.a0();
  std::vector<Direction> a1 = original.a1();
  a0[2] = conjugated(a0[2], tau3);
  a1[2] = conjugated(a1[2], tau3);
  const BellConfig rotated(a0, a1, conjugated(original.b0(), tau4),
                           conjugated(original.b1(), tau4));

  std::vector<double> rotated_phi_primes;
  for (const Direction& d : rotated.a1()) rotated_phi_primes.push_back(d.phi());

  // The rotated operator must coincide with the canonical Case5 operator.
  const BellConfig canonical = canonical_config(CanonicalCase::Case5, 4, rotated_phi_primes);
  const double mismatch =
      (bell_operator(rotated).matrix() - bell_operator(canonical).matrix()).cwiseAbs().maxCoeff();
  if (mismatch > 1e-12) {
    throw NumericalError("rotated example does not reduce to the Case5 form");
  }
  const DegeneracyReport in_case5 =
      degenerate_basis_case5(4, rotated_phi_primes, DegeneracyOptions{.spectral_check = false});

  const std::vector<Unitary> back = {Unitary(), Unitary(), Unitary(tau3), Unitary(tau4)};
  std::vector<State> basis;
  for (const State& psi : in_case5.basis) basis.push_back(apply_local<double>(psi, back));
  ExampleN4Report out{build_report(original, std::move(basis), in_case5.subsets,
                                   BasisConstruction::Case5Subsets, DegeneracyOptions{})};
  out.rotated_phi_primes = std::move(rotated_phi_primes);

  const std::complex<double> minus = std::polar(1.0, -kPi / 4);
  const std::complex<double> plus = std::polar(1.0, kPi / 4);
  const auto pair = [](Eigen::Index i, std::complex<double> ci, Eigen::Index j,
                       std::complex<double> cj) {
    CVector<double> v = CVector<double>::Zero(16);
    v(i) = ci / std::numbers::sqrt2;
    v(j) = cj / std::numbers::sqrt2;
    return State(std::move(v));
  };
  out.expected = {pair(0b0000, 1, 0b1111, 1), pair(0b1100, 1, 0b0011, 1),
                  pair(0b1010, minus, 0b0101, plus), pair(0b0110, minus, 0b1001, plus)};
  const std::size_t m = std::min(out.expected.size(), out.degeneracy.basis.size());
  for (std::size_t i = 0; i < m; ++i) {
    out.fidelities.push_back(std::abs(overlap(out.expected[i], out.degeneracy.basis[i])));
  }
  return out;
}

UjFamilyCheck uj_family_check(CanonicalCase family, int nu, int n, const std::vector<double>& deltas,
                              const std::vector<int>& w_positions,
                              std::optional<std::vector<double>> phi_primes) {
  const BellConfig cfg = canonical_config(family, n, phi_primes);
  if (deltas.size() != static_cast<std::size_t>(n - 1)) {
    throw InvalidArgument("need n-1 rotation angles delta_j");
  }
  check_subset(n, w_positions);
  if (family == CanonicalCase::Case1) {
    if (w_positions.size() % 2 != 0) {
      throw InvalidArgument("Case1 needs an even number of w factors");
    }
  } else {
    const std::vector<double> phases = phi_primes ? *phi_primes : default_case5_phases(n);
    double sum = 0;
    for (int k : w_positions) sum += phases[static_cast<std::size_t>(k - 1)];
    if (distance_to_multiple(sum, kPi) > 1e-9) {
      throw InvalidArgument("Case5 w positions must satisfy sum phi'_k = 0 (mod pi)");
    }
  }

  const SymmetryTriple t = symmetry_triple(family, nu, n);
  double delta = 0;
  std::vector<Unitary> factors;
  for (int j = 1; j <= n - 1; ++j) {
    const double dj = deltas[static_cast<std::size_t>(j - 1)];
    if (!std::isfinite(dj)) throw InvalidArgument("rotation angles must be finite");
    delta += dj;
    const bool is_w = std::find(w_positions.begin(), w_positions.end(), j) != w_positions.end();
    factors.push_back((is_w ? t.w : t.v) * Unitary(rz(dj)));
  }
  factors.push_back((t.u * Unitary(rz(delta))).conjugate());

  const State g = ghz_state(n);
  const State psi = apply_local<double>(g, factors);
  const CVector<double> image = apply_bell_operator(cfg, psi);

  UjFamilyCheck check;
  check.value_before = closed_form_bell_value(cfg);
  check.value_after = psi.amplitudes().dot(image).real();
  check.residual = (image - check.value_before * psi.amplitudes()).norm();
  check.flip_fidelity = std::abs(overlap(flip_state(n, w_positions), psi));
  return check;
}

RobustnessResult robustness_experiment(const DegeneracyReport& report,
                                       const std::vector<double>& weights, bool superpose,
                                       std::uint64_t seed, double tol) {
  if (weights.size() != report.basis.size()) {
    throw InvalidArgument("need one weight per basis state");
  }
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0)) throw InvalidArgument("weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > kAlgebraicTol) throw InvalidArgument("weights must sum to 1");

  const Operator op = bell_operator(report.config);
  double value;
  if (superpose) {
    Rng rng(seed);
    CVector<double> v = CVector<double>::Zero(report.basis.front().dim());
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const double theta = rng.uniform(0.0, 2 * kPi);
      v += std::polar(std::sqrt(weights[i]), theta) * report.basis[i].amplitudes();
    }
    value = expectation(State::normalized(std::move(v)), op);
  } else {
    value = expectation(DensityMatrix<double>::mixture(report.basis, weights), op);
  }
  const double expected = closed_form_bell_value(report.config);
  return {value, expected, std::abs(value - expected) <= tol};
}

const char* to_string(TsirelsonCase c) {
  switch (c) {
    case TsirelsonCase::CaseI: return "CaseI";
    case TsirelsonCase::CaseII: return "CaseII";
    case TsirelsonCase::CaseIII: return "CaseIII";
  }
  return "?";
}

const char* to_string(Orientation o) { return o == Orientation::Plus ? "Plus" : "Minus"; }

const char* to_string(CanonicalCase c) { return c == CanonicalCase::Case1 ? "Case1" : "Case5"; }

const char* to_string(BasisConstruction c) {
  switch (c) {
    case BasisConstruction::Case1Flips: return "Case1Flips";
    case BasisConstruction::Case5Subsets: return "Case5Subsets";
    case BasisConstruction::SpectralOnly: return "SpectralOnly";
  }
  return "?";
}

}  // namespace ghzbell
