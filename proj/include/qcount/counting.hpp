#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcount/channel.hpp"
#include "qcount/density.hpp"
#include "qcount/reachability.hpp"

namespace qcount {

/// 1 / (2e): the counting bound is defined for 0 <= delta below this value.
inline constexpr double kDeltaLimit = 0.18393972058572117;
/// 1 / e: applicability threshold of the Fannes bound on the trace distance.
inline constexpr double kFannesLimit = 0.36787944117144233;

/// Upper bound on log2 N for N orthonormal vectors all produced within trace
/// distance delta by a quantum operation on a d-dimensional input:
///   (log2 d + 4 delta log2(1/delta)) / (1 - 4 delta),  with 0 log(1/0) = 0.
/// Throws DomainError for d < 1 or delta outside [0, 1/(2e)).
double counting_bound(std::size_t d, double delta);

/// counting_bound for the space of strings of length <= n (d = 2^(n+1) - 1).
double qc_counting_bound(int n, double delta);

/// The looser closed form (n + 1 + 4 delta log2(1/delta)) / (1 - 4 delta).
double qc_counting_bound_relaxed(int n, double delta);

/// eta(x) = -x log2 x with eta(0) = 0.
double eta(double x);

/// Probability-weighted family of states on a common space.
class Ensemble {
 public:
  /// Throws DomainError for negative weights or weights not summing to 1
  /// (within 1e-10), DimensionError for mismatched lengths or spaces.
  Ensemble(std::vector<double> weights, std::vector<DensityOperator> states);

  /// Equal weights 1/N.
  static Ensemble uniform(std::vector<DensityOperator> states);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<DensityOperator>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const DensityOperator& average() const { return average_; }

  /// The ensemble {lambda_i, E(rho_i)}.
  Ensemble mapped(const Channel& channel) const;

 private:
  std::vector<double> weights_;
  std::vector<DensityOperator> states_;
  DensityOperator average_;
};

/// Holevo quantity S(rho_bar) - sum_i lambda_i S(rho_i), in bits.
double chi_quantity(const Ensemble& ensemble);
/// The same quantity written as sum_i lambda_i S(rho_i || rho_bar).
double chi_quantity_relative(const Ensemble& ensemble);

/// 2 T log2 d + eta(2 T). Throws DomainError for T outside [0, 1/e] or d < 1.
double fannes_bound(double trace_dist, std::size_t d);
/// fannes_bound at T = ||rho - sigma||_Tr and d = dim.
double fannes_bound(const DensityOperator& rho, const DensityOperator& sigma);

enum class FannesStatus { kPass, kFail, kNotApplicable };

struct FannesReport {
  double trace_distance = 0.0;
  double entropy_gap = 0.0;  ///< |S(rho) - S(sigma)|
  double bound = 0.0;        ///< meaningful only when applicable
  FannesStatus status = FannesStatus::kNotApplicable;
};

/// Evaluates |S(rho) - S(sigma)| against the Fannes bound. Pairs with
/// T > 1/e are reported as not applicable.
FannesReport fannes_check(const DensityOperator& rho, const DensityOperator& sigma,
                          double tol = 1e-8);

struct CountingWitness {
  std::size_t target_index = 0;
  DensityOperator input;
  double distance = 0.0;
};

struct CountingReport {
  std::size_t d = 0;          ///< input dimension
  double delta = 0.0;
  std::size_t targets = 0;
  std::size_t achieved = 0;   ///< targets with a witness
  double achieved_log2N = 0.0;  ///< log2(achieved); 0 when achieved is 0
  double bound_log2N = 0.0;
  std::vector<CountingWitness> witnesses;  ///< in target order
  bool pass = false;
};

/// Searches a witness for every target and compares log2(#reached) with
/// counting_bound(E.in_dim(), delta). Targets must be pairwise orthonormal
/// (InvalidChannelError otherwise). Each target uses its own seed stream
/// derive_seed(seed, {index}); `threads` > 1 parallelizes over targets with
/// results identical to a sequential run.
CountingReport verify_counting_instance(const Channel& channel, std::span<const PureState> targets,
                                        double delta, const ReachConfig& config,
                                        std::uint64_t seed, std::size_t threads = 1);

/// Numerical replay of the counting argument for a concrete witness set.
struct ProofChainReport {
  std::size_t n = 0;  ///< number of witnessed targets
  std::size_t d = 0;
  double delta = 0.0;

  // (a) chi(Q o E(ensemble)) <= chi(ensemble) <= log2 d
  double chi_output = 0.0;
  double chi_input = 0.0;
  double log2_d = 0.0;
  bool step_a = true;

  // (b) ||Q o E(sigma_i) - Q(P_i)||_Tr <= delta for every i
  double max_pinched_distance = 0.0;
  bool step_b = true;

  // (c) ||Q o E(sigma_bar) - Delta||_Tr <= delta
  double average_distance = 0.0;
  bool step_c = true;

  // Fannes steps: S(Q o E(sigma_i)) and |S(Q o E(sigma_bar)) - log2 N| are
  // both at most 2 delta log2(N+1) + eta(2 delta).
  double max_output_entropy = 0.0;
  double average_entropy_gap = 0.0;
  double fannes_term = 0.0;
  bool fannes_steps = true;

  // (d) log2 N <= counting_bound(d, delta)
  double log2_n = 0.0;
  double bound = 0.0;
  bool step_d = true;

  bool passes() const { return step_a && step_b && step_c && fannes_steps && step_d; }
};

/// Replays every inequality of the counting argument on witnesses sigma_i
/// with ||E(sigma_i) - |phi_i><phi_i|||_Tr <= delta. Vacuous (all steps pass)
/// when no witnesses are given. Throws DomainError for delta outside
/// [0, 1/(2e)) and DimensionError for mismatched inputs.
ProofChainReport replay_proof_chain(const Channel& channel, std::span<const PureState> targets,
                                    std::span<const DensityOperator> witnesses, double delta);

}  // namespace qcount
