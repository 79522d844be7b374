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

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "ghzbell/degeneracy.hpp"
#include "oracle.hpp"

using namespace ghzbell;

namespace {
constexpr double kPi = std::numbers::pi;
const double kTsirelson = 2 * std::numbers::sqrt2;
using cd = std::complex<double>;

oracle::Mat rotation(const oracle::Mat& sigma, double angle) {
  return std::cos(angle / 2) * oracle::Mat::Identity(2, 2) + cd(0, std::sin(angle / 2)) * sigma;
}

// |<G| v^(n-1) (x) conj(u) |G>| with the dense Kronecker product.
double oracle_symmetry_modulus(const oracle::Mat& u, const oracle::Mat& v, int n) {
  oracle::Mat op = v;
  for (int j = 1; j < n - 1; ++j) op = oracle::kron(op, v);
  op = oracle::kron(op, u.conjugate());
  const oracle::Vec g = oracle::ghz(n);
  return std::abs(oracle::expectation(g, op));
}

double fidelity(const State& a, const State& b) { return std::abs(overlap(a, b)); }

double dense_diff(const Unitary& u, const oracle::Mat& m) { return (u.matrix() - m).cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("classify_saturating_config examples") {
  const TsirelsonClass c1 = classify_saturating_config(canonical_config(CanonicalCase::Case1, 4));
  CHECK(c1.tsirelson_case == TsirelsonCase::CaseI);
  CHECK(c1.orientation == Orientation::Plus);

  CHECK(classify_saturating_config(example_n4_config()).tsirelson_case == TsirelsonCase::CaseIII);
  for (int n : {3, 5, 7}) {
    CHECK(classify_saturating_config(canonical_config(CanonicalCase::Case5, n)).tsirelson_case ==
          TsirelsonCase::CaseIII);
  }

  // A0 = sx, A1 = sz: the mirror of the canonical arrangement.
  const BellConfig mirror(std::vector<Direction>(3, Direction(kPi / 2, 0)),
                          std::vector<Direction>(3, Direction(0, 0)), Direction(kPi / 4, 0),
                          Direction(3 * kPi / 4, 0));
  REQUIRE(std::abs(closed_form_bell_value(mirror) - kTsirelson) < 1e-12);
  CHECK(classify_saturating_config(mirror).tsirelson_case == TsirelsonCase::CaseII);

  Rng rng(307);
  CHECK_THROWS_AS(classify_saturating_config(random_config(4, rng)), NotSaturatingError);
  CHECK_THROWS_AS(classify_saturating_config(random_config(3, rng)), NotSaturatingError);
}

TEST_CASE("canonical_config saturates and validates its inputs") {
  for (int n : {2, 4, 6, 8}) {
    const BellConfig cfg = canonical_config(CanonicalCase::Case1, n);
    CHECK(std::abs(closed_form_bell_value(cfg) - kTsirelson) < 1e-12);
  }
  const BellConfig c4 = canonical_config(CanonicalCase::Case1, 4);
  CHECK(std::abs(oracle::expectation(oracle::ghz(4), oracle::bell_operator(c4)).real() - kTsirelson) < 1e-12);

  for (int n : {2, 3, 4, 5, 9}) {
    CHECK(std::abs(closed_form_bell_value(canonical_config(CanonicalCase::Case5, n)) - kTsirelson) < 1e-12);
  }
  const std::vector<double> rotated_phi = {kPi / 2, kPi / 2, kPi / 2};
  CHECK(std::abs(closed_form_bell_value(canonical_config(CanonicalCase::Case5, 4, rotated_phi)) - kTsirelson) <
        1e-12);

  CHECK_THROWS_AS(canonical_config(CanonicalCase::Case1, 3), ParityError);
  CHECK_THROWS_AS(canonical_config(CanonicalCase::Case5, 4, std::vector<double>{0.1, 0.2, 0.3}), PhaseSumError);
  CHECK_THROWS_AS(canonical_config(CanonicalCase::Case5, 4, std::vector<double>{0.0, kPi / 2}), InvalidArgument);
}

TEST_CASE("symmetry_triple examples") {
  const oracle::Mat id = oracle::Mat::Identity(2, 2);
  const oracle::Mat sx = oracle::pauli_x();
  const oracle::Mat sz = oracle::pauli_z();

  const SymmetryTriple t1 = symmetry_triple(CanonicalCase::Case1, 1, 4);
  CHECK(dense_diff(t1.u, id) < 1e-15);
  CHECK(dense_diff(t1.v, id) < 1e-15);
  CHECK(dense_diff(t1.w, sx) < 1e-15);

  const SymmetryTriple t3 = symmetry_triple(CanonicalCase::Case1, 3, 4);
  const oracle::Mat u3 = rotation(oracle::pauli_y(), kPi / 2);
  CHECK(dense_diff(t3.u, u3) < 1e-15);
  CHECK(dense_diff(t3.w, sz * u3) < 1e-15);

  const oracle::Mat u5 = rotation(sx, -kPi / 2);
  const oracle::Mat u6 = sx * u5;
  CHECK(dense_diff(symmetry_triple(CanonicalCase::Case1, 5, 4).v, u6) < 1e-15);
  CHECK(dense_diff(symmetry_triple(CanonicalCase::Case1, 5, 6).v, u5) < 1e-15);
  CHECK(dense_diff(symmetry_triple(CanonicalCase::Case1, 6, 4).v, u5) < 1e-15);
  CHECK(dense_diff(symmetry_triple(CanonicalCase::Case1, 6, 6).v, u6) < 1e-15);

  const SymmetryTriple m6 = symmetry_triple(CanonicalCase::Case5, 6, 5);
  CHECK(dense_diff(m6.u, sx) < 1e-15);
  CHECK(dense_diff(m6.v, sx) < 1e-15);
  CHECK(dense_diff(m6.w, id) < 1e-15);

  CHECK_THROWS_AS(symmetry_triple(CanonicalCase::Case1, 7, 4), InvalidArgument);
  CHECK_THROWS_AS(symmetry_triple(CanonicalCase::Case5, 1, 4), InvalidArgument);
  CHECK_THROWS_AS(symmetry_triple(CanonicalCase::Case1, 1, 5), ParityError);
}

TEST_CASE("GHZ symmetry modulus agrees with the dense oracle") {
  for (int n = 2; n <= 10; n += 2) {
    for (int nu = 1; nu <= 6; ++nu) {
      const SymmetryTriple t = symmetry_triple(CanonicalCase::Case1, nu, n);
      const double reference = oracle_symmetry_modulus(t.u.matrix(), t.v.matrix(), n);
      CHECK(std::abs(verify_ghz_symmetry(CanonicalCase::Case1, nu, n).modulus - reference) < 1e-12);
    }
  }
  for (int n = 2; n <= 9; ++n) {
    for (int mu : {5, 6}) {
      const SymmetryCheck c = verify_ghz_symmetry(CanonicalCase::Case5, mu, n);
      CHECK(c.holds);
      CHECK(std::abs(c.modulus - 1) < 1e-12);
    }
  }
}

TEST_CASE("GHZ symmetry modulus frozen values") {
  // Bell-state base case: u (x) u* fixes psi+ for every u.
  for (int nu = 1; nu <= 6; ++nu) CHECK(verify_ghz_symmetry(CanonicalCase::Case1, nu, 2).holds);
  for (int n : {4, 6, 8, 10}) {
    CHECK(verify_ghz_symmetry(CanonicalCase::Case1, 1, n).holds);
    CHECK(verify_ghz_symmetry(CanonicalCase::Case1, 2, n).holds);
  }
  // Rotations by pi/2 about y or x do not preserve the GHZ state beyond two qubits.
  CHECK(verify_ghz_symmetry(CanonicalCase::Case1, 3, 4).modulus == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(verify_ghz_symmetry(CanonicalCase::Case1, 3, 4).holds);
  CHECK(verify_ghz_symmetry(CanonicalCase::Case5, 5, 5).modulus == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("flip_state and subset enumeration") {
  const State s = flip_state(4, {1, 2});
  CHECK(std::abs(s[0b1100] - 1 / std::numbers::sqrt2) < 1e-15);
  CHECK(std::abs(s[0b0011] - 1 / std::numbers::sqrt2) < 1e-15);
  CHECK_THROWS_AS(flip_state(4, {4}), InvalidArgument);
  CHECK_THROWS_AS(flip_state(4, {0}), InvalidArgument);

  const auto even = even_subsets(3);
  REQUIRE(even.size() == 4);
  CHECK(even[0].empty());
  CHECK(even[1] == std::vector<int>{1, 2});
  CHECK(even[2] == std::vector<int>{1, 3});
  CHECK(even[3] == std::vector<int>{2, 3});

  const auto adm = admissible_subsets({0, 0, kPi / 2});
  REQUIRE(adm.size() == 4);
  CHECK(adm[1] == std::vector<int>{1});
  CHECK(adm[2] == std::vector<int>{2});
  CHECK(adm[3] == std::vector<int>{1, 2});
}

TEST_CASE("even numbers of sz leave the GHZ state unchanged") {
  const State g = ghz_state(6);
  const Unitary id;
  const Unitary sz(pauli::z<double>());
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    if (std::popcount(mask) % 2) continue;
    std::vector<Unitary> factors;
    for (int j = 0; j < 6; ++j) factors.push_back((mask >> j) & 1 ? sz : id);
    const State out = apply_local<double>(g, factors);
    CHECK((out.amplitudes() - g.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("apply_bell_operator matches the dense operator") {
  Rng rng(311);
  for (int n = 2; n <= 6; ++n) {
    const BellConfig cfg = random_config(n, rng);
    oracle::Vec v = oracle::Vec::Zero(1 << n);
    for (auto& x : v) x = cd(rng.normal(), rng.normal());
    const State psi = State::normalized(v);
    const oracle::Vec dense = oracle::bell_operator(cfg) * psi.amplitudes();
    CHECK((apply_bell_operator(cfg, psi) - dense).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("case 1 degenerate basis") {
  const DegeneracyReport r4 = degenerate_basis_case1(4);
  CHECK(r4.multiplicity == 4);
  CHECK(r4.construction == BasisConstruction::Case1Flips);
  REQUIRE(r4.spectral_multiplicity.has_value());
  CHECK(*r4.spectral_multiplicity == 4);
  CHECK(r4.passed());
  CHECK(std::abs(r4.max_eigenvalue - kTsirelson) < 1e-9);
  CHECK(fidelity(r4.basis[0], ghz_state(4)) == doctest::Approx(1.0));
  CHECK(fidelity(r4.basis[3], flip_state(4, {2, 3})) == doctest::Approx(1.0));

  // Membership cross-checked against the dense operator.
  const oracle::Mat op = oracle::bell_operator(r4.config);
  for (const State& psi : r4.basis) {
    CHECK((op * psi.amplitudes() - kTsirelson * psi.amplitudes()).norm() < 1e-10);
  }

  const DegeneracyReport r6 = degenerate_basis_case1(6);
  CHECK(r6.multiplicity == 16);
  CHECK(r6.spectral_multiplicity.value_or(-1) == 16);
  CHECK(r6.passed());

  const DegeneracyReport r8 = degenerate_basis_case1(8);
  CHECK(r8.multiplicity == 64);
  CHECK(r8.passed());

  CHECK_THROWS_AS(degenerate_basis_case1(5), ParityError);
  CHECK_THROWS_AS(degenerate_basis_case1(16), CapacityError);
}

TEST_CASE("case 5 degenerate basis") {
  const DegeneracyReport simple = degenerate_basis_case5(4, {0, 0, kPi / 2});
  CHECK(simple.multiplicity == 4);
  CHECK(simple.spectral_multiplicity.value_or(-1) == 4);
  CHECK(simple.passed());
  CHECK(simple.construction == BasisConstruction::Case5Subsets);

  const DegeneracyReport rotated = degenerate_basis_case5(4, {kPi / 2, kPi / 2, kPi / 2});
  REQUIRE(rotated.subsets.size() == 4);
  CHECK(rotated.subsets[0].empty());
  CHECK(rotated.subsets[1] == std::vector<int>{1, 2});
  CHECK(rotated.subsets[2] == std::vector<int>{1, 3});
  CHECK(rotated.subsets[3] == std::vector<int>{2, 3});
  CHECK(rotated.passed());

  const DegeneracyReport generic = degenerate_basis_case5(4, {0.3, 0.7, kPi / 2 - 1.0});
  CHECK(generic.multiplicity == 1);
  CHECK(generic.spectral_multiplicity.value_or(-1) == 1);
  CHECK(generic.passed());

  for (int n = 2; n <= 7; ++n) {
    const DegeneracyReport r = degenerate_basis_case5(n, default_case5_phases(n));
    CHECK(r.multiplicity == (1 << (n - 2)));
    CHECK(r.passed());
  }

  CHECK_THROWS_AS(degenerate_basis_case5(4, {0.1, 0.1, 0.1}), PhaseSumError);
}

TEST_CASE("complement exclusion over random admissible phases") {
  Rng rng(313);
  for (int k = 0; k < 200; ++k) {
    const int n_alice = 2 + static_cast<int>(rng.below(6));
    std::vector<double> phi(static_cast<std::size_t>(n_alice));
    double sum = 0;
    for (int j = 0; j + 1 < n_alice; ++j) {
      // Mix commensurate and generic angles so that nontrivial subsets appear.
      phi[static_cast<std::size_t>(j)] = rng.below(2) ? kPi / 2 * static_cast<double>(rng.below(4)) : rng.uniform(0, 2 * kPi);
      sum += phi[static_cast<std::size_t>(j)];
    }
    phi.back() = kPi / 2 - sum;
    CHECK(complement_exclusion_holds(phi));
    CHECK(admissible_subsets(phi).size() <= (std::size_t{1} << (n_alice - 1)));
  }
}

TEST_CASE("n = 4 worked example") {
  const ExampleN4Report ex = reproduce_example_n4();
  CHECK(ex.degeneracy.multiplicity == 4);
  CHECK(ex.degeneracy.spectral_multiplicity.value_or(-1) == 4);
  CHECK(ex.degeneracy.passed());
  REQUIRE(ex.rotated_phi_primes.size() == 3);
  for (double p : ex.rotated_phi_primes) CHECK(p == doctest::Approx(kPi / 2));
  REQUIRE(ex.fidelities.size() == 4);
  for (double f : ex.fidelities) CHECK(std::abs(f - 1) < 1e-10);

  const double r = 1 / std::numbers::sqrt2;
  CHECK(std::abs(ex.expected[0][0b0000] - r) < 1e-15);
  CHECK(std::abs(ex.expected[0][0b1111] - r) < 1e-15);
  CHECK(std::abs(ex.expected[2][0b1010] - r * std::polar(1.0, -kPi / 4)) < 1e-15);
  CHECK(std::abs(ex.expected[2][0b0101] - r * std::polar(1.0, kPi / 4)) < 1e-15);

  // Eigenstates of the original operator, checked densely.
  const oracle::Mat op = oracle::bell_operator(example_n4_config());
  for (const State& psi : ex.expected) {
    CHECK((op * psi.amplitudes() - kTsirelson * psi.amplitudes()).norm() < 1e-10);
  }
}

TEST_CASE("u_j family checks") {
  const UjFamilyCheck id = uj_family_check(CanonicalCase::Case1, 1, 4, {0, 0, 0}, {});
  CHECK(id.value_preserved());
  CHECK(id.is_eigenstate());
  CHECK(id.matches_flip_state());

  const UjFamilyCheck pair = uj_family_check(CanonicalCase::Case1, 1, 4, {0.4, -1.1, 0.3}, {1, 2});
  CHECK(pair.value_preserved());
  CHECK(pair.is_eigenstate());
  CHECK(pair.matches_flip_state());

  const UjFamilyCheck nu2 = uj_family_check(CanonicalCase::Case1, 2, 6, {0.1, 0.2, 0.3, 0.4, 0.5}, {2, 5});
  CHECK(nu2.value_preserved());
  CHECK(nu2.matches_flip_state());

  CHECK_THROWS_AS(uj_family_check(CanonicalCase::Case1, 1, 4, {0, 0, 0}, {1}), InvalidArgument);
  CHECK_THROWS_AS(uj_family_check(CanonicalCase::Case1, 1, 4, {0, 0}, {}), InvalidArgument);

  // The rotated families still give eigenstates, though not the flip states.
  for (int nu = 3; nu <= 6; ++nu) {
    const UjFamilyCheck c = uj_family_check(CanonicalCase::Case1, nu, 4, {0, 0, 0}, {});
    CHECK(c.value_preserved());
    CHECK(c.is_eigenstate());
    CHECK_FALSE(c.matches_flip_state());
  }

  const UjFamilyCheck c5 = uj_family_check(CanonicalCase::Case5, 5, 4, {0.2, 0.3, -0.9}, {1, 2});
  CHECK(c5.value_preserved());
  CHECK(c5.is_eigenstate());
  CHECK(c5.matches_flip_state());
  const UjFamilyCheck c6 = uj_family_check(CanonicalCase::Case5, 6, 5, {0.2, 0.3, -0.9, 1.0}, {});
  CHECK(c6.is_eigenstate());
  CHECK(c6.matches_flip_state());
  CHECK_THROWS_AS(uj_family_check(CanonicalCase::Case5, 5, 4, {0, 0, 0}, {3}), InvalidArgument);
}

TEST_CASE("robustness of the degenerate subspace") {
  const DegeneracyReport r = degenerate_basis_case1(4);
  const RobustnessResult uniform = robustness_experiment(r, {0.25, 0.25, 0.25, 0.25}, false);
  CHECK(std::abs(uniform.value - kTsirelson) < 1e-10);
  CHECK(uniform.within_tolerance);
  CHECK(robustness_experiment(r, {1, 0, 0, 0}, false).within_tolerance);
  const RobustnessResult sup = robustness_experiment(r, {0.1, 0.2, 0.3, 0.4}, true, 11);
  CHECK(std::abs(sup.value - kTsirelson) < 1e-10);
  CHECK(robustness_experiment(r, {0.1, 0.2, 0.3, 0.4}, true, 11).value == sup.value);

  CHECK_THROWS_AS(robustness_experiment(r, {0.5, 0.5}, false), InvalidArgument);
  CHECK_THROWS_AS(robustness_experiment(r, {0.5, 0.5, 0.5, -0.5}, false), InvalidArgument);
  CHECK_THROWS_AS(robustness_experiment(r, {0.3, 0.3, 0.3, 0.3}, true), InvalidArgument);
}
