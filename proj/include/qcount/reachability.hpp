#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcount/channel.hpp"
#include "qcount/density.hpp"

namespace qcount {

/// Budget for the convex search min_sigma ||E(sigma) - |psi><psi|||_Tr.
struct ReachConfig {
  int max_iterations = 500;  ///< descent iterations per start
  int restarts = 20;         ///< random pure starting points (after one warm start)
  double tolerance = 1e-7;   ///< stop a start when an iteration improves less than this
  /// A point counts as a witness when its distance is <= delta + accept_slack.
  double accept_slack = 1e-10;
  bool record_history = false;
};

struct ReachResult {
  std::optional<DensityOperator> witness;
  double best_distance = 1.0;
  /// Best certified lower bound on min_sigma ||E(sigma) - P||_Tr found by the
  /// dual of the descent; informational, never used to claim unreachability.
  double lower_bound = 0.0;
  int iterations = 0;
  int starts = 0;
  /// Objective value after every iteration, one list per start (when recorded).
  std::vector<std::vector<double>> history;

  bool found() const { return witness.has_value(); }
};

/// Conditional-gradient search over density operators: the linearization
/// step moves toward the pure state on the lowest eigenvector of the
/// subgradient E^dagger(G), G = sign(E(sigma) - P) / 2, followed by an exact
/// line search on the segment. The first start is the pure input maximizing
/// <psi|E(sigma)|psi>; the rest are seeded random pure states. The search
/// stops as soon as a witness within delta is found, or when the dual lower
/// bound exceeds delta.
ReachResult reachability(const Channel& channel, const PureState& target, double delta,
                         const ReachConfig& config, std::uint64_t seed);

}  // namespace qcount
