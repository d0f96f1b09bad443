#include "resnet/random_walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "resnet/errors.hpp"
#include "resnet/parallel.hpp"

namespace resnet {

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  auto splitmix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return splitmix(seed ^ splitmix(trial + 0x632be59bd9b4e019ULL));
}

void WalkConfig::validate() const {
  if (max_steps < 1) throw ArgumentError("max_steps must be at least 1");
  if (trials < 1) throw ArgumentError("trials must be at least 1");
}

double TransitionTable::probability(std::size_t i) const {
  const double prev = i == 0 ? 0.0 : cumulative[i - 1];
  return (cumulative[i] - prev) / cumulative.back();
}

TransitionTable transition_table(const LatticeSpec& lattice, const Site& site) {
  TransitionTable out;
  lattice.neighbors(site, out.neighbors);
  if (out.neighbors.empty()) throw PreconditionError("walk reached a vertex with no edges");
  double sum = 0.0;
  for (const LatticeNeighbor& n : out.neighbors) {
    sum += n.conductance;
    out.cumulative.push_back(sum);
    if (n.conductance != out.neighbors.front().conductance) out.uniform = false;
  }
  return out;
}

namespace {

std::size_t draw(const std::vector<LatticeNeighbor>& nbrs, WalkRng& rng) {
  const double first = nbrs.front().conductance;
  bool uniform = std::all_of(nbrs.begin(), nbrs.end(), [&](const LatticeNeighbor& n) { return n.conductance == first; });
  if (uniform) return std::uniform_int_distribution<std::size_t>(0, nbrs.size() - 1)(rng);
  double total = 0.0;
  for (const LatticeNeighbor& n : nbrs) total += n.conductance;
  const double x = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    acc += nbrs[i].conductance;
    if (x < acc) return i;
  }
  return nbrs.size() - 1;
}

// First step at which the walk is back at start, or 0 if it never is.
std::uint64_t first_return(const LatticeSpec& lattice, const Site& start, std::uint64_t max_steps, WalkRng& rng) {
  if (lattice.kind() == LatticeKind::grid) {
    // Same draws as the generic path: index k picks -e_{k/2} or +e_{k/2}.
    const int dims = lattice.dimension();
    std::uniform_int_distribution<std::size_t> pick(0, 2 * static_cast<std::size_t>(dims) - 1);
    std::array<std::int64_t, 4> offset{};
    for (std::uint64_t step = 1; step <= max_steps; ++step) {
      std::size_t k = pick(rng);
      offset[k / 2] += (k % 2) ? 1 : -1;
      if (offset[0] == 0 && offset[1] == 0 && offset[2] == 0 && offset[3] == 0) return step;
    }
    return 0;
  }
  Site at = start;
  std::vector<LatticeNeighbor> nbrs;
  for (std::uint64_t step = 1; step <= max_steps; ++step) {
    lattice.neighbors(at, nbrs);
    at = nbrs[draw(nbrs, rng)].site;
    if (at == start) return step;
  }
  return 0;
}

WalkStats summarize(const WalkConfig& cfg, std::uint64_t limit, const std::vector<std::uint64_t>& returns_at) {
  WalkStats stats;
  stats.max_steps = limit;
  stats.trials = cfg.trials;
  stats.seed = cfg.seed;
  double step_sum = 0.0;
  for (std::uint64_t t : returns_at) {
    if (t != 0 && t <= limit) {
      ++stats.returns;
      step_sum += static_cast<double>(t);
    }
  }
  const double f = static_cast<double>(stats.returns) / static_cast<double>(stats.trials);
  stats.return_frequency = f;
  stats.standard_error = std::sqrt(f * (1.0 - f) / static_cast<double>(stats.trials));
  stats.mean_first_return_step =
      stats.returns ? step_sum / static_cast<double>(stats.returns) : std::numeric_limits<double>::quiet_NaN();
  return stats;
}

std::vector<std::uint64_t> simulate(const LatticeSpec& lattice, const WalkConfig& cfg, std::uint64_t max_steps) {
  if (!lattice.contains(cfg.start)) throw ArgumentError("walk start is not a vertex of " + lattice.name());
  if (lattice.kind() == LatticeKind::tree)
    throw UnsupportedKindError("random walks on trees escape past the representable depth");
  std::vector<std::uint64_t> returns_at(cfg.trials, 0);
  parallel_for(cfg.trials, [&](std::size_t trial) {
    WalkRng rng(trial_seed(cfg.seed, trial));
    returns_at[trial] = first_return(lattice, cfg.start, max_steps, rng);
  });
  return returns_at;
}

}  // namespace

Site walk_step(const LatticeSpec& lattice, const Site& v, WalkRng& rng) {
  std::vector<LatticeNeighbor> nbrs;
  lattice.neighbors(v, nbrs);
  if (nbrs.empty()) throw PreconditionError("walk reached a vertex with no edges");
  return nbrs[draw(nbrs, rng)].site;
}

WalkStats return_frequency(const LatticeSpec& lattice, const WalkConfig& cfg) {
  cfg.validate();
  return summarize(cfg, cfg.max_steps, simulate(lattice, cfg, cfg.max_steps));
}

std::vector<WalkStats> return_frequencies(const LatticeSpec& lattice, const WalkConfig& cfg,
                                          std::span<const std::uint64_t> step_limits) {
  if (step_limits.empty()) throw ArgumentError("no step limits given");
  WalkConfig base = cfg;
  base.max_steps = *std::max_element(step_limits.begin(), step_limits.end());
  base.validate();
  auto returns_at = simulate(lattice, base, base.max_steps);
  std::vector<WalkStats> out;
  for (std::uint64_t limit : step_limits) {
    if (limit < 1) throw ArgumentError("step limits must be at least 1");
    out.push_back(summarize(base, limit, returns_at));
  }
  return out;
}

std::string to_string(EscapeStatus status) {
  switch (status) {
    case EscapeStatus::estimate:
      return "estimate";
    case EscapeStatus::diverging:
      return "diverging";
    case EscapeStatus::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

EscapeEstimate escape_probability_via_resistance(const LatticeSpec& lattice, const Site& p,
                                                 const InfinityTable& rinf) {
  EscapeEstimate out;
  for (const LatticeNeighbor& n : lattice.neighbors(p)) out.vertex_conductance += n.conductance;
  const auto& rows = rinf.table.rows;
  if (rinf.fit.trend == Trend::diverging_linear || rinf.fit.trend == Trend::diverging_log) {
    out.status = EscapeStatus::diverging;
    out.probability = 0.0;
    return out;
  }
  if (rows.size() >= 2 && std::abs(rows.back().value - rows[rows.size() - 2].value) < kPlateauChange) {
    out.status = EscapeStatus::estimate;
    out.resistance_limit = rinf.fit.limit.value_or(rows.back().value);
    out.probability = 1.0 / (out.vertex_conductance * out.resistance_limit);
    return out;
  }
  out.status = EscapeStatus::indeterminate;
  return out;
}

void write_walk_csv(std::ostream& out, const LatticeSpec& lattice, const Site& start,
                    std::span<const WalkStats> stats) {
  out << "lattice,start,seed,trials,max_steps,returns,return_frequency,standard_error,mean_first_return_step\n";
  for (const WalkStats& s : stats) {
    out << lattice.name() << ",\"" << lattice.format_site(start) << "\"," << s.seed << ',' << s.trials << ','
        << s.max_steps << ',' << s.returns << ',' << format_double(s.return_frequency) << ','
        << format_double(s.standard_error) << ',' << format_double(s.mean_first_return_step) << '\n';
  }
}

}  // namespace resnet
