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

// Dense complex kernel: states, operators, tensor products, Pauli algebra,
// expectation values and Hermitian eigendecomposition. Everything here is
// templated on the real scalar type; the rest of the library instantiates
// it with double.
//
// Qubit ordering: qubit 0 is the leftmost tensor factor and the most
// significant bit of a basis index, so |11...1> is the last basis vector.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ghzbell/errors.hpp"

namespace ghzbell {

inline constexpr int kMaxQubits = 14;
/// Default tolerance for algebraic identities (normalization, Hermiticity).
inline constexpr double kAlgebraicTol = 1e-12;
/// Default tolerance for grouping eigenvalues.
inline constexpr double kSpectralTol = 1e-9;
/// Largest imaginary residue tolerated in an expectation value.
inline constexpr double kImagTol = 1e-10;

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <typename Real>
using Matrix2c = Eigen::Matrix<Complex<Real>, 2, 2>;
template <typename Real>
using Vector3 = Eigen::Matrix<Real, 3, 1>;

namespace detail {

inline void check_qubit_count(int n_qubits) {
  if (n_qubits < 1) {
    throw InvalidArgument("qubit count must be positive, got " + std::to_string(n_qubits));
  }
  if (n_qubits > kMaxQubits) {
    throw CapacityError("qubit count " + std::to_string(n_qubits) + " exceeds the capacity of " +
                        std::to_string(kMaxQubits));
  }
}

inline Eigen::Index side_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

/// Number of qubits for a power-of-two side length; throws otherwise.
inline int qubits_of_side(Eigen::Index side) {
  if (side < 2 || (side & (side - 1)) != 0) {
    throw DimensionError("dimension " + std::to_string(side) + " is not a power of two >= 2");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < side) ++n;
  check_qubit_count(n);
  return n;
}

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace detail

namespace pauli {

template <typename Real = double>
Matrix2c<Real> identity() {
  return Matrix2c<Real>::Identity();
}

template <typename Real = double>
Matrix2c<Real> x() {
  Matrix2c<Real> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Real = double>
Matrix2c<Real> y() {
  const Complex<Real> i(0, 1);
  Matrix2c<Real> m;
  m << 0, -i, i, 0;
  return m;
}

template <typename Real = double>
Matrix2c<Real> z() {
  Matrix2c<Real> m;
  m << 1, 0, 0, -1;
  return m;
}

/// n . sigma for a real 3-vector n.
template <typename Real>
Matrix2c<Real> dot(const Vector3<Real>& n) {
  return Complex<Real>(n.x()) * x<Real>() + Complex<Real>(n.y()) * y<Real>() +
         Complex<Real>(n.z()) * z<Real>();
}

/// exp(i * angle/2 * n.sigma) for a unit axis n.
template <typename Real>
Matrix2c<Real> exp_half_angle(const Vector3<Real>& axis, Real angle) {
  const Complex<Real> i(0, 1);
  return Complex<Real>(std::cos(angle / 2)) * identity<Real>() +
         i * Complex<Real>(std::sin(angle / 2)) * dot<Real>(axis);
}

}  // namespace pauli

/// Bloch vector of a 2x2 matrix: (Re tr(M sx), Re tr(M sy), Re tr(M sz)) / 2.
template <typename Real>
Vector3<Real> bloch_vector(const Matrix2c<Real>& m) {
  return Vector3<Real>((m * pauli::x<Real>()).trace().real() / 2,
                       (m * pauli::y<Real>()).trace().real() / 2,
                       (m * pauli::z<Real>()).trace().real() / 2);
}

/// Bloch direction (alpha, phi) of a +-1 observable n.sigma with
/// n = (sin a cos p, sin a sin p, cos a). Angles are normalized on
/// construction to alpha in [0, pi] and phi in [0, 2pi).
template <typename Real = double>
class MeasurementDirection {
 public:
  MeasurementDirection() = default;

  MeasurementDirection(Real alpha, Real phi) {
    if (!std::isfinite(alpha) || !std::isfinite(phi)) {
      throw InvalidArgument("measurement angles must be finite");
    }
    constexpr Real two_pi = 2 * std::numbers::pi_v<Real>;
    alpha = wrap(alpha, two_pi);
    if (alpha > std::numbers::pi_v<Real>) {
      alpha = two_pi - alpha;
      phi += std::numbers::pi_v<Real>;
    }
    alpha_ = alpha;
    phi_ = wrap(phi, two_pi);
  }

  static MeasurementDirection from_bloch(const Vector3<Real>& n) {
    const Real norm = n.norm();
    if (!(norm > 0)) throw InvalidArgument("Bloch vector must be non-zero");
    const Vector3<Real> u = n / norm;
    const Real alpha = std::acos(std::clamp(u.z(), Real(-1), Real(1)));
    const Real phi = std::atan2(u.y(), u.x());
    return MeasurementDirection(alpha, phi);
  }

  Real alpha() const { return alpha_; }
  Real phi() const { return phi_; }

  Vector3<Real> bloch() const {
    return Vector3<Real>(std::sin(alpha_) * std::cos(phi_), std::sin(alpha_) * std::sin(phi_),
                         std::cos(alpha_));
  }

 private:
  static Real wrap(Real angle, Real period) {
    Real r = std::fmod(angle, period);
    if (r < 0) r += period;
    if (r >= period) r = 0;
    return r;
  }

  Real alpha_ = 0;
  Real phi_ = 0;
};

/// Normalized N-qubit pure state.
template <typename Real = double>
class StateVector {
 public:
  using Vector = CVector<Real>;

  explicit StateVector(Vector amplitudes, Real tol = Real(kAlgebraicTol))
      : n_qubits_(detail::qubits_of_side(amplitudes.size())), amplitudes_(std::move(amplitudes)) {
    if (!amplitudes_.allFinite()) throw InvalidArgument("state amplitudes must be finite");
    const Real norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1) > tol) {
      throw InvalidArgument("state is not normalized: squared norm " + std::to_string(norm2));
    }
  }

  /// Rescales `amplitudes` to unit norm.
  static StateVector normalized(Vector amplitudes) {
    const Real norm = amplitudes.norm();
    if (!(norm > 0)) throw InvalidArgument("cannot normalize a zero vector");
    amplitudes /= norm;
    return StateVector(std::move(amplitudes));
  }

  static StateVector basis(int n_qubits, Eigen::Index index) {
    detail::check_qubit_count(n_qubits);
    const Eigen::Index dim = detail::side_of(n_qubits);
    if (index < 0 || index >= dim) throw InvalidArgument("basis index out of range");
    Vector v = Vector::Zero(dim);
    v(index) = 1;
    return StateVector(std::move(v));
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex<Real> operator[](Eigen::Index i) const { return amplitudes_(i); }

 private:
  int n_qubits_;
  Vector amplitudes_;
};

/// Dense Hermitian operator on N qubits.
template <typename Real = double>
class HermitianOperator {
 public:
  using Matrix = CMatrix<Real>;

  explicit HermitianOperator(Matrix entries, Real tol = Real(kAlgebraicTol))
      : n_qubits_(checked_qubits(entries)), entries_(std::move(entries)) {
    if (!entries_.allFinite()) throw InvalidArgument("operator entries must be finite");
    const Real defect = detail::hermiticity_defect(entries_);
    if (defect > tol) {
      throw NotHermitianError("operator is not Hermitian: max |O - O^dagger| = " +
                              std::to_string(defect));
    }
  }

  static HermitianOperator identity(int n_qubits) {
    detail::check_qubit_count(n_qubits);
    const Eigen::Index d = detail::side_of(n_qubits);
    return HermitianOperator(Matrix::Identity(d, d));
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
    same_shape(a, b);
    return HermitianOperator(a.entries_ + b.entries_, Trusted{});
  }
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
    same_shape(a, b);
    return HermitianOperator(a.entries_ - b.entries_, Trusted{});
  }
  friend HermitianOperator operator*(Real s, const HermitianOperator& a) {
    return HermitianOperator(Complex<Real>(s) * a.entries_, Trusted{});
  }

  /// Kronecker product of two Hermitian operators (left factor = leading qubits).
  friend HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
    detail::check_qubit_count(a.n_qubits_ + b.n_qubits_);
    return HermitianOperator(Matrix(Eigen::kroneckerProduct(a.entries_, b.entries_)), Trusted{});
  }

 private:
  struct Trusted {};
  HermitianOperator(Matrix entries, Trusted)
      : n_qubits_(detail::qubits_of_side(entries.rows())), entries_(std::move(entries)) {}

  static int checked_qubits(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("operator matrix must be square");
    return detail::qubits_of_side(m.rows());
  }
  static void same_shape(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.n_qubits_ != b.n_qubits_) throw DimensionError("operators act on different qubit counts");
  }

  int n_qubits_;
  Matrix entries_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
template <typename Real = double>
class DensityMatrix {
 public:
  using Matrix = CMatrix<Real>;

  explicit DensityMatrix(Matrix entries, Real tol = Real(kAlgebraicTol))
      : n_qubits_(detail::qubits_of_side(entries.rows())), entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw DimensionError("density matrix must be square");
    if (!entries_.allFinite()) throw InvalidArgument("density matrix entries must be finite");
    if (detail::hermiticity_defect(entries_) > tol) {
      throw NotHermitianError("density matrix is not Hermitian");
    }
    if (std::abs(entries_.trace() - Complex<Real>(1)) > tol) {
      throw InvalidArgument("density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < Real(-1e-10)) {
      throw InvalidArgument("density matrix has a negative eigenvalue");
    }
  }

  static DensityMatrix pure(const StateVector<Real>& psi) {
    return DensityMatrix(Matrix(psi.amplitudes() * psi.amplitudes().adjoint()));
  }

  /// sum_i p_i |psi_i><psi_i|; weights must be non-negative and sum to 1.
  static DensityMatrix mixture(std::span<const StateVector<Real>> states,
                               std::span<const Real> weights) {
    if (states.empty() || states.size() != weights.size()) {
      throw InvalidArgument("mixture needs one weight per state");
    }
    Real total = 0;
    for (Real w : weights) {
      if (!(w >= 0)) throw InvalidArgument("mixture weights must be non-negative");
      total += w;
    }
    if (std::abs(total - 1) > Real(kAlgebraicTol)) {
      throw InvalidArgument("mixture weights must sum to 1");
    }
    const Eigen::Index d = states.front().dim();
    Matrix rho = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i].dim() != d) throw DimensionError("mixture states differ in dimension");
      rho.noalias() += Complex<Real>(weights[i]) * states[i].amplitudes() *
                       states[i].amplitudes().adjoint();
    }
    return DensityMatrix(std::move(rho));
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }

 private:
  int n_qubits_;
  Matrix entries_;
};

/// 2x2 unitary with U^dagger U = 1.
template <typename Real = double>
class Unitary2 {
 public:
  using Matrix = Matrix2c<Real>;

  Unitary2() : m_(Matrix::Identity()) {}

  explicit Unitary2(const Matrix& m, Real tol = Real(kAlgebraicTol)) : m_(m) {
    if (!m_.allFinite()) throw InvalidArgument("unitary entries must be finite");
    const Real defect = (m_.adjoint() * m_ - Matrix::Identity()).cwiseAbs().maxCoeff();
    if (defect > tol) {
      throw NotUnitaryError("matrix is not unitary: max |U^dagger U - 1| = " +
                            std::to_string(defect));
    }
  }

  const Matrix& matrix() const { return m_; }
  Unitary2 adjoint() const { return Unitary2(m_.adjoint().eval(), Trusted{}); }
  Unitary2 transpose() const { return Unitary2(m_.transpose().eval(), Trusted{}); }
  Unitary2 conjugate() const { return Unitary2(m_.conjugate().eval(), Trusted{}); }

  friend Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
    return Unitary2((a.m_ * b.m_).eval(), Trusted{});
  }

 private:
  struct Trusted {};
  Unitary2(const Matrix& m, Trusted) : m_(m) {}

  Matrix m_;
};

/// n.sigma for the direction's Bloch vector; eigenvalues are exactly +-1.
template <typename Real>
HermitianOperator<Real> pauli_observable(const MeasurementDirection<Real>& dir) {
  return HermitianOperator<Real>(CMatrix<Real>(pauli::dot<Real>(dir.bloch())));
}

template <typename Real>
HermitianOperator<Real> pauli_observable(const Vector3<Real>& bloch) {
  return HermitianOperator<Real>(CMatrix<Real>(pauli::dot<Real>(bloch)));
}

/// Kronecker product in left-to-right order.
template <typename Real>
HermitianOperator<Real> tensor(std::span<const HermitianOperator<Real>> ops) {
  if (ops.empty()) throw InvalidArgument("tensor of an empty list");
  int total = 0;
  for (const auto& op : ops) total += op.n_qubits();
  detail::check_qubit_count(total);
  HermitianOperator<Real> out = ops.front();
  for (std::size_t k = 1; k < ops.size(); ++k) out = kron(out, ops[k]);
  return out;
}

template <typename Real>
HermitianOperator<Real> tensor(std::initializer_list<HermitianOperator<Real>> ops) {
  return tensor(std::span<const HermitianOperator<Real>>(ops.begin(), ops.size()));
}

template <typename Real>
StateVector<Real> tensor(std::span<const StateVector<Real>> states) {
  if (states.empty()) throw InvalidArgument("tensor of an empty list");
  int total = 0;
  for (const auto& s : states) total += s.n_qubits();
  detail::check_qubit_count(total);
  CVector<Real> v = states.front().amplitudes();
  for (std::size_t k = 1; k < states.size(); ++k) {
    v = CVector<Real>(Eigen::kroneckerProduct(v, states[k].amplitudes()));
  }
  return StateVector<Real>(std::move(v), Real(1e-10));
}

template <typename Real>
StateVector<Real> tensor(std::initializer_list<StateVector<Real>> states) {
  return tensor(std::span<const StateVector<Real>>(states.begin(), states.size()));
}

/// <a|b>.
template <typename Real>
Complex<Real> overlap(const StateVector<Real>& a, const StateVector<Real>& b) {
  if (a.dim() != b.dim()) throw DimensionError("overlap of states with different dimensions");
  return a.amplitudes().dot(b.amplitudes());
}

namespace detail {
template <typename Real>
Real checked_real(Complex<Real> value, Real imag_tol) {
  if (std::abs(value.imag()) >= imag_tol) {
    throw NumericalError("expectation value has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}
}  // namespace detail

/// <psi|O|psi>.
template <typename Real>
Real expectation(const StateVector<Real>& psi, const HermitianOperator<Real>& op,
                 Real imag_tol = Real(kImagTol)) {
  if (psi.n_qubits() != op.n_qubits()) {
    throw DimensionError("state has " + std::to_string(psi.n_qubits()) +
                         " qubits, operator has " + std::to_string(op.n_qubits()));
  }
  return detail::checked_real<Real>(psi.amplitudes().dot(op.matrix() * psi.amplitudes()),
                                    imag_tol);
}

/// Tr(rho O).
template <typename Real>
Real expectation(const DensityMatrix<Real>& rho, const HermitianOperator<Real>& op,
                 Real imag_tol = Real(kImagTol)) {
  if (rho.n_qubits() != op.n_qubits()) {
    throw DimensionError("density matrix has " + std::to_string(rho.n_qubits()) +
                         " qubits, operator has " + std::to_string(op.n_qubits()));
  }
  return detail::checked_real<Real>(rho.matrix().cwiseProduct(op.matrix().transpose()).sum(),
                                    imag_tol);
}

/// Ascending eigenvalues and the matching orthonormal eigenvectors (columns).
template <typename Real>
struct HermitianEigensystem {
  RVector<Real> values;
  CMatrix<Real> vectors;
};

namespace detail {
// Imaginary parts at rounding level (e.g. from sin(pi)) count as zero; the
// eigenvalue shift from dropping them is at most dim * 64 eps * max|m_ij|.
template <typename Real>
bool is_real(const CMatrix<Real>& m) {
  if (m.size() == 0) return true;
  const Real scale = std::max(Real(1), m.cwiseAbs().maxCoeff());
  return m.imag().cwiseAbs().maxCoeff() <= 64 * std::numeric_limits<Real>::epsilon() * scale;
}
}  // namespace detail

// Real-valued operators go through the real symmetric solver, which is
// several times faster at the 2^12 sizes used by the degeneracy checks.
template <typename Real>
HermitianEigensystem<Real> eig_hermitian(const HermitianOperator<Real>& op) {
  const auto& m = op.matrix();
  if (detail::is_real(m)) {
    using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(RMatrix(m.real()), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors().template cast<Complex<Real>>()};
  }
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Checks Hermiticity of a raw matrix before decomposing it.
template <typename Real>
HermitianEigensystem<Real> eig_hermitian(const CMatrix<Real>& m,
                                         Real tol = Real(kAlgebraicTol)) {
  return eig_hermitian(HermitianOperator<Real>(m, tol));
}

template <typename Real>
RVector<Real> eigenvalues_hermitian(const HermitianOperator<Real>& op) {
  const auto& m = op.matrix();
  if (detail::is_real(m)) {
    using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(RMatrix(m.real()), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
    return solver.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  return solver.eigenvalues();
}

/// Number of eigenvalues within `tol` of the largest one.
template <typename Real>
int multiplicity_of_max(std::span<const Real> values, Real tol = Real(kSpectralTol)) {
  if (values.empty()) throw InvalidArgument("multiplicity of an empty spectrum");
  if (!(tol > 0)) throw InvalidArgument("tolerance must be positive");
  const Real top = *std::max_element(values.begin(), values.end());
  return static_cast<int>(
      std::count_if(values.begin(), values.end(), [&](Real v) { return top - v <= tol; }));
}

template <typename Real>
int multiplicity_of_max(const std::vector<Real>& values, Real tol = Real(kSpectralTol)) {
  return multiplicity_of_max(std::span<const Real>(values), tol);
}

template <typename Real>
int multiplicity_of_max(const RVector<Real>& values, Real tol = Real(kSpectralTol)) {
  return multiplicity_of_max(std::span<const Real>(values.data(), values.size()), tol);
}

/// Applies a single-qubit matrix to `qubit` (0 = leftmost) of a raw vector.
template <typename Real>
void apply_on_qubit(CVector<Real>& amplitudes, int n_qubits, const Matrix2c<Real>& gate, int qubit) {
  if (qubit < 0 || qubit >= n_qubits) throw InvalidArgument("qubit index out of range");
  const Eigen::Index stride = Eigen::Index{1} << (n_qubits - 1 - qubit);
  const Eigen::Index dim = amplitudes.size();
  for (Eigen::Index block = 0; block < dim; block += 2 * stride) {
    for (Eigen::Index k = block; k < block + stride; ++k) {
      const Complex<Real> a0 = amplitudes(k);
      const Complex<Real> a1 = amplitudes(k + stride);
      amplitudes(k) = gate(0, 0) * a0 + gate(0, 1) * a1;
      amplitudes(k + stride) = gate(1, 0) * a0 + gate(1, 1) * a1;
    }
  }
}

/// (U_0 (x) U_1 (x) ... (x) U_{n-1}) |psi> without forming the full matrix.
template <typename Real>
StateVector<Real> apply_local(const StateVector<Real>& psi, std::span<const Unitary2<Real>> factors) {
  if (static_cast<int>(factors.size()) != psi.n_qubits()) {
    throw DimensionError("need one local unitary per qubit");
  }
  CVector<Real> v = psi.amplitudes();
  for (int q = 0; q < psi.n_qubits(); ++q) apply_on_qubit<Real>(v, psi.n_qubits(), factors[q].matrix(), q);
  return StateVector<Real>(std::move(v), Real(1e-10));
}

/// Applies sigma_x to every qubit listed in `qubits` (0-based).
template <typename Real>
StateVector<Real> flip_qubits(const StateVector<Real>& psi, std::span<const int> qubits) {
  Eigen::Index mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= psi.n_qubits()) throw InvalidArgument("qubit index out of range");
    mask ^= Eigen::Index{1} << (psi.n_qubits() - 1 - q);
  }
  CVector<Real> v(psi.dim());
  for (Eigen::Index i = 0; i < psi.dim(); ++i) v(i ^ mask) = psi[i];
  return StateVector<Real>(std::move(v));
}

}  // namespace ghzbell
