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

#include "ghzbell/games.hpp"

#include <cmath>
#include <numbers>

#include "ghzbell/parallel.hpp"

namespace ghzbell {

namespace {

using M2 = Matrix2c<double>;
using M4 = Eigen::Matrix<std::complex<double>, 4, 4>;

constexpr std::uint64_t kShotsPerBlock = 4096;

M2 projector(const M2& observable, int outcome) {
  const double sign = outcome == 0 ? 1.0 : -1.0;
  return 0.5 * (M2::Identity() + sign * observable);
}

Eigen::Vector4cd psi_plus() {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  return v;
}

Eigen::Vector2cd plus_state() { return Eigen::Vector2cd::Constant(1.0 / std::numbers::sqrt2); }

// Joint outcome distribution p[x][y] on |psi+> for observables A (x) B.
std::array<std::array<double, 2>, 2> joint_distribution(const M2& a, const M2& b) {
  const Eigen::Vector4cd psi = psi_plus();
  std::array<std::array<double, 2>, 2> p{};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const M4 proj = Eigen::kroneckerProduct(projector(a, x), projector(b, y));
      p[x][y] = psi.dot(proj * psi).real();
    }
  }
  return p;
}

double carol_plus_probability(const M2& c) {
  const Eigen::Vector2cd plus = plus_state();
  return plus.dot(projector(c, 0) * plus).real();
}

void finish(GameOutcomeTable& t) {
  double total = 0;
  for (const auto& row : t.win_probability) {
    for (double p : row) total += p;
  }
  t.success_probability = total / 4.0;
}

}  // namespace

ChshStrategy ChshStrategy::identity() { return {}; }

ChshStrategy ChshStrategy::optimal() {
  const double q = std::numbers::pi / 4;
  return from_observables(TwoQubitConfig(Vector3d::UnitX(), Vector3d::UnitY(),
                                         Vector3d(std::cos(q), -std::sin(q), 0),
                                         Vector3d(std::cos(q), std::sin(q), 0)));
}

ChshStrategy ChshStrategy::from_observables(const TwoQubitConfig& cfg) {
  ChshStrategy s;
  for (int k = 0; k < 2; ++k) {
    s.alice[k] = unitary_from_observable(cfg.alice(k)).transpose();
    s.bob[k] = unitary_from_observable(cfg.bob(k));
  }
  return s;
}

Operator observable_from_unitary_alice(const Unitary& u) {
  const M2& m = u.matrix();
  return Operator(CMatrix<double>(m.conjugate() * pauli::x<double>() * m.transpose()));
}

Operator observable_from_unitary_bob(const Unitary& u) {
  const M2& m = u.matrix();
  return Operator(CMatrix<double>(m.adjoint() * pauli::x<double>() * m));
}

Unitary unitary_from_observable(const Vector3d& target) {
  if (!target.allFinite() || std::abs(target.norm() - 1.0) > kAlgebraicTol) {
    throw InvalidArgument("target must be a unit Bloch vector");
  }
  const Vector3d x = Vector3d::UnitX();
  const Vector3d axis = x.cross(target);
  const double s = axis.norm();
  const double c = x.dot(target);
  if (s < 1e-15) {
    if (c > 0) return Unitary();
    // -i sz; sz sx sz = -sx.
    return Unitary(pauli::exp_half_angle<double>(Vector3d::UnitZ(), -std::numbers::pi));
  }
  // V = exp(+i theta/2 k.sigma) rotates by -theta about k, taking target to x.
  const double theta = std::atan2(s, c);
  return Unitary(pauli::exp_half_angle<double>(axis / s, theta));
}

Matrix2c<double> chsh_star_observable(const Unitary& a, const Unitary& b) {
  const M2& am = a.matrix();
  const M2& bm = b.matrix();
  return am.adjoint() * bm.adjoint() * pauli::x<double>() * bm * am;
}

GameOutcomeTable chsh_game_value(const ChshStrategy& s) {
  GameOutcomeTable t;
  for (int a = 0; a < 2; ++a) {
    const M2 obs_a = observable_from_unitary_alice(s.alice[a]).matrix();
    for (int b = 0; b < 2; ++b) {
      const M2 obs_b = observable_from_unitary_bob(s.bob[b]).matrix();
      const auto p = joint_distribution(obs_a, obs_b);
      double win = 0;
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          if ((x ^ y) == (a & b)) win += p[x][y];
        }
      }
      t.win_probability[a][b] = win;
      const double corr = p[0][0] + p[1][1] - p[0][1] - p[1][0];
      t.i_value += ((a & b) ? -1.0 : 1.0) * corr;
    }
  }
  finish(t);
  return t;
}

GameOutcomeTable chsh_star_value(const ChshStrategy& s) {
  GameOutcomeTable t;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double p_plus = carol_plus_probability(chsh_star_observable(s.alice[a], s.bob[b]));
      t.win_probability[a][b] = (a & b) ? 1.0 - p_plus : p_plus;
      t.i_value += ((a & b) ? -1.0 : 1.0) * (2.0 * p_plus - 1.0);
    }
  }
  finish(t);
  return t;
}

GameOutcomeTable game_value(const ChshStrategy& s, Game game) {
  return game == Game::Chsh ? chsh_game_value(s) : chsh_star_value(s);
}

MonteCarloEstimate play_monte_carlo(const ChshStrategy& s, Game game, std::uint64_t shots,
                                    std::uint64_t seed, int threads) {
  if (shots < 1) throw InvalidArgument("Monte-Carlo play needs at least one shot");

  // Cumulative outcome tables per input pair. For CHSH the outcomes are
  // (x, y) in order 00, 01, 10, 11; for CHSH* the outcome is c.
  std::array<std::array<std::array<double, 4>, 2>, 2> cdf{};
  std::array<std::array<std::array<bool, 4>, 2>, 2> wins{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      auto& c = cdf[a][b];
      auto& w = wins[a][b];
      if (game == Game::Chsh) {
        const auto p = joint_distribution(observable_from_unitary_alice(s.alice[a]).matrix(),
                                          observable_from_unitary_bob(s.bob[b]).matrix());
        double acc = 0;
        for (int k = 0; k < 4; ++k) {
          const int x = k >> 1;
          const int y = k & 1;
          acc += p[x][y];
          c[k] = acc;
          w[k] = (x ^ y) == (a & b);
        }
      } else {
        const double p0 = carol_plus_probability(chsh_star_observable(s.alice[a], s.bob[b]));
        c = {p0, 1.0, 1.0, 1.0};
        w = {(a & b) == 0, (a & b) == 1, false, false};
      }
      c[3] = 1.0;
    }
  }

  const std::uint64_t blocks = (shots + kShotsPerBlock - 1) / kShotsPerBlock;
  std::vector<std::uint64_t> block_wins(blocks, 0);
  const std::uint64_t tag = game == Game::Chsh ? 0 : 1;
  parallel_for(blocks, threads, [&](std::size_t k) {
    Rng rng({seed, tag, static_cast<std::uint64_t>(k)});
    const std::uint64_t begin = k * kShotsPerBlock;
    const std::uint64_t end = std::min(shots, begin + kShotsPerBlock);
    std::uint64_t won = 0;
    for (std::uint64_t shot = begin; shot < end; ++shot) {
      const int a = static_cast<int>(rng.below(2));
      const int b = static_cast<int>(rng.below(2));
      const double u = rng.uniform();
      int outcome = 0;
      while (outcome < 3 && u >= cdf[a][b][outcome]) ++outcome;
      if (wins[a][b][outcome]) ++won;
    }
    block_wins[k] = won;
  });

  MonteCarloEstimate est;
  for (std::uint64_t w : block_wins) est.wins += w;
  est.shots = shots;
  est.seed = seed;
  est.estimate = static_cast<double>(est.wins) / static_cast<double>(shots);
  est.standard_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(shots));
  return est;
}

Unitary random_unitary(Rng& rng) {
  M2 g;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) g(r, c) = {rng.normal(), rng.normal()};
  }
  // Polar factor U = G (G^dagger G)^{-1/2}.
  Eigen::SelfAdjointEigenSolver<M2> es(g.adjoint() * g);
  const Eigen::Vector2d inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const M2 root_inv = es.eigenvectors() * inv_sqrt.cast<std::complex<double>>().asDiagonal() *
                      es.eigenvectors().adjoint();
  return Unitary(g * root_inv, 1e-10);
}

ChshStrategy random_strategy(Rng& rng) {
  ChshStrategy s;
  for (auto& u : s.alice) u = random_unitary(rng);
  for (auto& u : s.bob) u = random_unitary(rng);
  return s;
}

}  // namespace ghzbell
