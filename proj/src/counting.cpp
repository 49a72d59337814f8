#include "qcount/counting.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "qcount/errors.hpp"
#include "qcount/parallel.hpp"
#include "qcount/random.hpp"

namespace qcount {

namespace {

void require_delta(double delta) {
  if (!(delta >= 0.0 && delta < kDeltaLimit)) {
    std::ostringstream msg;
    msg << "delta = " << delta << " outside [0, 1/(2e)) = [0, " << kDeltaLimit << ")";
    throw DomainError(msg.str());
  }
}

// delta log2(1/delta) with the 0 log(1/0) = 0 convention.
double delta_log_term(double delta) { return delta > 0.0 ? -delta * std::log2(delta) : 0.0; }

DensityOperator average_of(const std::vector<double>& w, const std::vector<DensityOperator>& s) {
  if (s.empty()) throw DimensionError("ensemble must not be empty");
  if (w.size() != s.size()) throw DimensionError("ensemble needs one weight per state");
  return mix(w, s);
}

}  // namespace

double counting_bound(std::size_t d, double delta) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  require_delta(delta);
  return (std::log2(static_cast<double>(d)) + 4.0 * delta_log_term(delta)) / (1.0 - 4.0 * delta);
}

double qc_counting_bound(int n, double delta) {
  if (n < 0 || n > StringBasis::kMaxLength) throw DomainError("string length bound out of range");
  return counting_bound(StringBasis::dim_for(n), delta);
}

double qc_counting_bound_relaxed(int n, double delta) {
  if (n < 0) throw DomainError("string length bound must be non-negative");
  require_delta(delta);
  return (n + 1 + 4.0 * delta_log_term(delta)) / (1.0 - 4.0 * delta);
}

double eta(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

Ensemble::Ensemble(std::vector<double> weights, std::vector<DensityOperator> states)
    : weights_(std::move(weights)),
      states_(std::move(states)),
      average_(average_of(weights_, states_)) {
  double total = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw DomainError("ensemble weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("ensemble weights must sum to 1");
}

Ensemble Ensemble::uniform(std::vector<DensityOperator> states) {
  const std::size_t n = states.size();
  if (n == 0) throw DimensionError("ensemble must not be empty");
  return Ensemble(std::vector<double>(n, 1.0 / static_cast<double>(n)), std::move(states));
}

Ensemble Ensemble::mapped(const Channel& channel) const {
  std::vector<DensityOperator> out;
  out.reserve(states_.size());
  for (const auto& s : states_) out.push_back(apply(channel, s));
  return Ensemble(weights_, std::move(out));
}

double chi_quantity(const Ensemble& ensemble) {
  double mixed = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    mixed += ensemble.weights()[i] * von_neumann_entropy(ensemble.states()[i]);
  }
  return std::max(0.0, von_neumann_entropy(ensemble.average()) - mixed);
}

double chi_quantity_relative(const Ensemble& ensemble) {
  double chi = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const double w = ensemble.weights()[i];
    if (w == 0.0) continue;
    chi += w * relative_entropy(ensemble.states()[i], ensemble.average());
  }
  return chi;
}

double fannes_bound(double trace_dist, std::size_t d) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  if (!(trace_dist >= 0.0 && trace_dist <= kFannesLimit)) {
    std::ostringstream msg;
    msg << "Fannes bound needs trace distance in [0, 1/e], got " << trace_dist;
    throw DomainError(msg.str());
  }
  return 2.0 * trace_dist * std::log2(static_cast<double>(d)) + eta(2.0 * trace_dist);
}

double fannes_bound(const DensityOperator& rho, const DensityOperator& sigma) {
  return fannes_bound(trace_distance(rho, sigma), rho.dim());
}

FannesReport fannes_check(const DensityOperator& rho, const DensityOperator& sigma, double tol) {
  FannesReport r;
  r.trace_distance = trace_distance(rho, sigma);
  r.entropy_gap = std::abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma));
  if (r.trace_distance > kFannesLimit) {
    r.status = FannesStatus::kNotApplicable;
    return r;
  }
  r.bound = fannes_bound(r.trace_distance, rho.dim());
  r.status = r.entropy_gap <= r.bound + tol ? FannesStatus::kPass : FannesStatus::kFail;
  return r;
}

CountingReport verify_counting_instance(const Channel& channel, std::span<const PureState> targets,
                                        double delta, const ReachConfig& config,
                                        std::uint64_t seed, std::size_t threads) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].dim() != channel.out_dim()) {
      throw DimensionError("target dimension does not match channel output dimension");
    }
    for (std::size_t j = i; j < targets.size(); ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(targets[i].vector().dot(targets[j].vector()) - expected) > 1e-8) {
        throw InvalidChannelError("targets are not pairwise orthonormal");
      }
    }
  }

  CountingReport report;
  report.d = channel.in_dim();
  report.delta = delta;
  report.targets = targets.size();
  report.bound_log2N = counting_bound(report.d, delta);

  std::vector<ReachResult> results(targets.size());
  parallel_for(targets.size(), threads, [&](std::size_t i) {
    results[i] = reachability(channel, targets[i], delta, config, derive_seed(seed, {i}));
  });

  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (results[i].found()) {
      report.witnesses.push_back({i, *results[i].witness, results[i].best_distance});
    }
  }
  report.achieved = report.witnesses.size();
  report.achieved_log2N =
      report.achieved > 0 ? std::log2(static_cast<double>(report.achieved)) : 0.0;
  report.pass = report.achieved == 0 || report.achieved_log2N <= report.bound_log2N + 1e-12;
  return report;
}

ProofChainReport replay_proof_chain(const Channel& channel, std::span<const PureState> targets,
                                    std::span<const DensityOperator> witnesses, double delta) {
  require_delta(delta);
  if (targets.size() != witnesses.size()) {
    throw DimensionError("need exactly one witness per target");
  }
  ProofChainReport r;
  r.n = targets.size();
  r.d = channel.in_dim();
  r.delta = delta;
  r.log2_d = std::log2(static_cast<double>(r.d));
  r.bound = counting_bound(r.d, delta);
  if (r.n == 0) return r;

  const Channel pinch = build_pinching(targets);
  const Channel pinched = compose(pinch, channel);
  const auto n = static_cast<Eigen::Index>(r.n);

  // (a) monotonicity of chi under Q, then chi <= log2 d.
  const Ensemble inputs = Ensemble::uniform({witnesses.begin(), witnesses.end()});
  const Ensemble outputs = inputs.mapped(pinched);
  r.chi_input = chi_quantity(inputs);
  r.chi_output = chi_quantity(outputs);
  r.step_a = r.chi_output <= r.chi_input + 1e-8 && r.chi_input <= r.log2_d + 1e-8;

  // (b) Q(P_i) = |e_i><e_i| and trace distance contracts under Q.
  double sum_dist = 0.0;
  r.fannes_term = 2.0 * delta * std::log2(static_cast<double>(r.n + 1)) + eta(2.0 * delta);
  for (Eigen::Index i = 0; i < n; ++i) {
    const DensityOperator e_i = DensityOperator::pure(PureState::unit(r.n + 1, static_cast<std::size_t>(i)));
    const double dist = trace_distance(outputs.states()[static_cast<std::size_t>(i)], e_i);
    r.max_pinched_distance = std::max(r.max_pinched_distance, dist);
    sum_dist += dist;
    r.max_output_entropy =
        std::max(r.max_output_entropy, von_neumann_entropy(outputs.states()[static_cast<std::size_t>(i)]));
  }
  r.step_b = r.max_pinched_distance <= delta + 1e-9;

  // (c) the averaged output is close to Delta = (1/N) sum |e_i><e_i|.
  Matrix uniform = Matrix::Zero(n + 1, n + 1);
  uniform.topLeftCorner(n, n) = Matrix::Identity(n, n) / static_cast<double>(r.n);
  const DensityOperator big_delta = DensityOperator::trusted(uniform);
  r.average_distance = trace_distance(outputs.average(), big_delta);
  r.step_c = r.average_distance <= delta + 1e-9 && r.average_distance <= sum_dist / static_cast<double>(r.n) + 1e-12;

  // Fannes applied to both comparisons; S(Delta) = log2 N.
  r.log2_n = std::log2(static_cast<double>(r.n));
  r.average_entropy_gap = std::abs(von_neumann_entropy(outputs.average()) - r.log2_n);
  r.fannes_steps = r.max_output_entropy <= r.fannes_term + 1e-8 &&
                   r.average_entropy_gap <= r.fannes_term + 1e-8;

  // (d) the rearranged inequality.
  r.step_d = r.log2_n <= r.bound + 1e-6;
  return r;
}

}  // namespace qcount
