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

// Tsirelson-saturating configurations of the N-qubit CHSH function and the
// degenerate eigenspace of its largest eigenvalue.
//
// Subsets K of Alice's qubits are 1-based ({1, ..., n-1}) and always listed
// by size, then lexicographically.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ghzbell/bell.hpp"
#include "ghzbell/games.hpp"

namespace ghzbell {

/// Which Bloch-vector pattern a saturating configuration follows:
/// CaseI  - unprimed directions along +-z, primed ones equatorial;
/// CaseII - the mirror of CaseI;
/// CaseIII - both families equatorial (the only option for odd n).
enum class TsirelsonCase { CaseI, CaseII, CaseIII };

/// Splits each case into two members. Plus/Minus is the sign of A0's z
/// component (CaseI), A1's z component (CaseII), or of (A0 x A1)_z, the
/// handedness of the equatorial pair (CaseIII). The labeling is ours.
enum class Orientation { Plus, Minus };

struct TsirelsonClass {
  TsirelsonCase tsirelson_case;
  Orientation orientation;

  friend bool operator==(const TsirelsonClass&, const TsirelsonClass&) = default;
};

/// Canonical saturating families: Case1 has Alice measuring sz on every
/// qubit for a = 0 and sx for a = 1 (even n only); Case5 has sx for a = 0
/// and equatorial directions phi'_j for a = 1.
enum class CanonicalCase { Case1, Case5 };

struct SymmetryTriple {
  Unitary u;
  Unitary v;
  Unitary w;
  CanonicalCase family;
  int nu;
};

enum class BasisConstruction { Case1Flips, Case5Subsets, SpectralOnly };

struct DegeneracyOptions {
  /// Diagonalize the dense operator and compare multiplicities.
  bool spectral_check = true;
  double tol = kSpectralTol;
};

struct DegeneracyReport {
  BellConfig config;
  double max_eigenvalue = 0;
  int multiplicity = 0;
  std::vector<State> basis{};
  BasisConstruction construction = BasisConstruction::SpectralOnly;
  std::vector<std::vector<int>> subsets{};
  /// Largest ||I psi - max_eigenvalue psi|| over the basis.
  double max_residual = 0;
  /// Largest |<psi_i|psi_j> - delta_ij| over the basis.
  double orthonormality_defect = 0;
  /// Multiplicity of the top eigenvalue from the dense spectrum, if computed.
  std::optional<int> spectral_multiplicity{};

  bool eigenstates_verified() const { return max_residual < 1e-8 && orthonormality_defect < 1e-9; }
  bool spectral_agrees() const {
    return !spectral_multiplicity || *spectral_multiplicity == multiplicity;
  }
  bool passed() const { return eigenstates_verified() && spectral_agrees(); }
};

/// Tolerance on |sin alpha| / |cos alpha| when deciding whether a direction
/// is parallel to z or equatorial. Saturation within 1e-9 pins angles only
/// to about sqrt(1e-9).
inline constexpr double kGeometryTol = 1e-4;

TsirelsonClass classify_saturating_config(const BellConfig& cfg, double value_tol = 1e-9,
                                          double geometry_tol = kGeometryTol);

/// Default Case5 phases: (0, ..., 0, pi/2).
std::vector<double> default_case5_phases(int n);

BellConfig canonical_config(CanonicalCase family, int n,
                            std::optional<std::vector<double>> phi_primes = std::nullopt);

SymmetryTriple symmetry_triple(CanonicalCase family, int nu, int n);

struct SymmetryCheck {
  double modulus;
  bool holds;
};

/// |<G| v^{(x)(n-1)} (x) conj(u) |G>| compared with 1.
SymmetryCheck verify_ghz_symmetry(CanonicalCase family, int nu, int n, double tol = 1e-12);

/// (x)_{k in K} sx^k |G> for a 1-based subset K of {1, ..., n-1}.
State flip_state(int n, const std::vector<int>& subset);

/// I^N |psi> evaluated term by term without forming the dense operator.
CVector<double> apply_bell_operator(const BellConfig& cfg, const State& psi);

/// All even-size subsets of {1, ..., n-1}.
std::vector<std::vector<int>> even_subsets(int n_alice);

/// Subsets K with sum_{k in K} phi'_k = 0 (mod pi).
std::vector<std::vector<int>> admissible_subsets(const std::vector<double>& phi_primes,
                                                 double tol = 1e-9);

/// True when no subset and its complement are both admissible.
bool complement_exclusion_holds(const std::vector<double>& phi_primes, double tol = 1e-9);

DegeneracyReport degenerate_basis_case1(int n, const DegeneracyOptions& options = {});
DegeneracyReport degenerate_basis_case5(int n, const std::vector<double>& phi_primes,
                                        const DegeneracyOptions& options = {});

/// Multiplicity and eigenspace straight from the dense spectrum.
DegeneracyReport spectral_degeneracy(const BellConfig& cfg, double tol = kSpectralTol);

struct ExampleN4Report {
  DegeneracyReport degeneracy;
  /// Reference states (1/sqrt 2)(|0000>+|1111>), (|1100>+|0011>),
  /// (e^{-i pi/4}|1010> + e^{i pi/4}|0101>), (e^{-i pi/4}|0110> + e^{i pi/4}|1001>).
  std::vector<State> expected{};
  /// |<expected_i|basis_i>|.
  std::vector<double> fidelities{};
  /// Phi' after the z rotations on qubits 3 and 4.
  std::vector<double> rotated_phi_primes{};
};

/// The n = 4 configuration phi_1 = phi_2 = phi'_4 = 0, phi'_1 = phi'_2 =
/// phi_4 = pi/2, phi_3 = -pi/4, phi'_3 = pi/4 (all alpha = pi/2): rotate
/// qubits 3 and 4 about z into Case5 form, enumerate K, rotate back.
ExampleN4Report reproduce_example_n4();

/// The n = 4 configuration above.
BellConfig example_n4_config();

struct UjFamilyCheck {
  double value_before = 0;
  double value_after = 0;
  /// ||I psi - value_before psi|| for psi = (x)u_j |G>.
  double residual = 0;
  /// |<flip_K G | psi>|.
  double flip_fidelity = 0;

  bool value_preserved() const { return std::abs(value_after - value_before) < 1e-10; }
  bool is_eigenstate() const { return residual < 1e-8; }
  bool matches_flip_state() const { return std::abs(flip_fidelity - 1.0) < 1e-10; }
};

/// Builds u_j = (w if j in K else v) exp(i sz delta_j / 2) for j < n and
/// u_n = conj(u^(nu) exp(i sz delta / 2)) with delta = sum delta_j, applies
/// them to |G> of the canonical operator and measures the outcome.
UjFamilyCheck uj_family_check(CanonicalCase family, int nu, int n, const std::vector<double>& deltas,
                              const std::vector<int>& w_positions,
                              std::optional<std::vector<double>> phi_primes = std::nullopt);

struct RobustnessResult {
  double value;
  double expected;
  bool within_tolerance;
};

/// Bell value of a mixture (superpose = false) or of the normalized
/// superposition sum sqrt(p_i) e^{i theta_i} |psi_i> with seeded random
/// phases (superpose = true) over the report's basis.
RobustnessResult robustness_experiment(const DegeneracyReport& report,
                                       const std::vector<double>& weights, bool superpose,
                                       std::uint64_t seed = 0, double tol = 1e-10);

const char* to_string(TsirelsonCase c);
const char* to_string(Orientation o);
const char* to_string(CanonicalCase c);
const char* to_string(BasisConstruction c);

}  // namespace ghzbell
