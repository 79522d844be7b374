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

// CHSH game (two players sharing |psi+>) and the single-player CHSH* game
// on |+>. Strategies are local unitaries followed by a sigma_x measurement.

#include <array>
#include <cstdint>

#include "ghzbell/bell.hpp"
#include "ghzbell/qops.hpp"
#include "ghzbell/random.hpp"

namespace ghzbell {

using Unitary = Unitary2<double>;

struct ChshStrategy {
  std::array<Unitary, 2> alice;
  std::array<Unitary, 2> bob;

  static ChshStrategy identity();
  /// Reaches (2 + sqrt 2)/4: A0 = sx, A1 = sy, B0/B1 at phi = -pi/4, pi/4.
  static ChshStrategy optimal();
  /// Strategy whose observables have the given Bloch vectors.
  static ChshStrategy from_observables(const TwoQubitConfig& cfg);
};

enum class Game { Chsh, ChshStar };

struct GameOutcomeTable {
  /// Win probability for inputs (a, b).
  std::array<std::array<double, 2>, 2> win_probability{};
  double success_probability = 0;
  double i_value = 0;
};

/// conj(U) sx U^T.
Operator observable_from_unitary_alice(const Unitary& u);
/// U^dagger sx U.
Operator observable_from_unitary_bob(const Unitary& u);

/// V with V^dagger sx V = target.sigma: the minimal rotation taking target
/// to x (rotation by pi about z for target = -x).
Unitary unitary_from_observable(const Vector3d& target);

/// Carol's observable C_ab = A^dagger B^dagger sx B A.
Matrix2c<double> chsh_star_observable(const Unitary& a, const Unitary& b);

GameOutcomeTable chsh_game_value(const ChshStrategy& s);
GameOutcomeTable chsh_star_value(const ChshStrategy& s);
GameOutcomeTable game_value(const ChshStrategy& s, Game game);

struct MonteCarloEstimate {
  double estimate = 0;
  double standard_error = 0;
  std::uint64_t wins = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Shots are played in fixed blocks; block k draws from the substream
/// (seed, game, k), so the estimate is independent of `threads`.
MonteCarloEstimate play_monte_carlo(const ChshStrategy& s, Game game, std::uint64_t shots,
                                    std::uint64_t seed, int threads = 1);

/// Haar-random 2x2 unitary (polar factor of a complex Gaussian matrix).
Unitary random_unitary(Rng& rng);
ChshStrategy random_strategy(Rng& rng);

}  // namespace ghzbell
