#ifndef RESNET_RANDOM_WALK_HPP
#define RESNET_RANDOM_WALK_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "resnet/approximation.hpp"
#include "resnet/lattice.hpp"

namespace resnet {

using WalkRng = std::mt19937_64;

/// Seed for trial `trial` of a run seeded with `seed`. Each trial owns an
/// independent generator, so trials can run in any order or concurrently.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct WalkConfig {
  std::uint64_t max_steps = 10000;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  Site start{};

  void validate() const;
};

struct WalkStats {
  std::uint64_t max_steps = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t returns = 0;
  double return_frequency = 0.0;
  double standard_error = 0.0;  // sqrt(f (1 - f) / trials)
  double mean_first_return_step = 0.0;  // NaN when nothing returned
};

/// Neighbors of a site with cumulative conductances; cumulative.back() is
/// the total conductance at the site.
struct TransitionTable {
  std::vector<LatticeNeighbor> neighbors;
  std::vector<double> cumulative;
  bool uniform = true;  // every conductance equal

  double probability(std::size_t i) const;
};

TransitionTable transition_table(const LatticeSpec& lattice, const Site& site);

/// Moves to a neighbor chosen with probability proportional to conductance.
/// Equal conductances draw a uniform index, others a uniform point on the
/// cumulative table.
Site walk_step(const LatticeSpec& lattice, const Site& v, WalkRng& rng);

/// Fraction of trials that revisit cfg.start within cfg.max_steps steps.
WalkStats return_frequency(const LatticeSpec& lattice, const WalkConfig& cfg);

/// Same trials evaluated at several step limits; cfg.max_steps is ignored
/// and the largest limit is simulated once. Results follow `step_limits`.
std::vector<WalkStats> return_frequencies(const LatticeSpec& lattice, const WalkConfig& cfg,
                                          std::span<const std::uint64_t> step_limits);

enum class EscapeStatus { estimate, diverging, indeterminate };

std::string to_string(EscapeStatus status);

struct EscapeEstimate {
  EscapeStatus status = EscapeStatus::indeterminate;
  double probability = 0.0;       // valid unless indeterminate
  double resistance_limit = 0.0;  // used when status == estimate
  double vertex_conductance = 0.0;
};

inline constexpr double kPlateauChange = 1e-3;

/// Probability that a walk from p never returns, via
/// 1 / (total conductance at p * resistance from p to infinity).
/// Diverging resistance trends give 0. A plateau (last two values within
/// kPlateauChange) uses the extrapolated limit when the fit provides one,
/// else the last value. Anything else is indeterminate.
EscapeEstimate escape_probability_via_resistance(const LatticeSpec& lattice, const Site& p,
                                                 const InfinityTable& rinf);

void write_walk_csv(std::ostream& out, const LatticeSpec& lattice, const Site& start,
                    std::span<const WalkStats> stats);

}  // namespace resnet

#endif
