#include "qcount/reachability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "qcount/errors.hpp"
#include "qcount/random.hpp"

namespace qcount {

namespace {

struct Objective {
  const Channel& channel;
  Matrix target;  // |psi><psi| on the output space

  double at(const Matrix& output) const { return linalg::half_trace_norm(output - target); }
};

// Exact minimization of the convex function t -> f((1-t) a + t b) on [0, 1]
// by golden-section search. Returns the best of the bracketing evaluations
// and both endpoints, so the result never exceeds f at t = 0.
std::pair<double, double> line_search(const Objective& obj, const Matrix& a, const Matrix& b,
                                      double f0) {
  auto eval = [&](double t) { return obj.at((1.0 - t) * a + t * b); };
  const double f1 = eval(1.0);
  double best_t = 0.0;
  double best_f = f0;
  if (f1 < best_f) {
    best_t = 1.0;
    best_f = f1;
  }
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double g1 = eval(x1);
  double g2 = eval(x2);
  while (hi - lo > 1e-9) {
    if (g1 <= g2) {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - kInvPhi * (hi - lo);
      g1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + kInvPhi * (hi - lo);
      g2 = eval(x2);
    }
  }
  if (g1 < best_f) {
    best_f = g1;
    best_t = x1;
  }
  if (g2 < best_f) {
    best_f = g2;
    best_t = x2;
  }
  return {best_t, best_f};
}

}  // namespace

ReachResult reachability(const Channel& channel, const PureState& target, double delta,
                         const ReachConfig& config, std::uint64_t seed) {
  if (target.dim() != channel.out_dim()) {
    throw DimensionError("target dimension does not match channel output dimension");
  }
  const Objective obj{channel, linalg::projector(target.vector())};
  const auto in = static_cast<Eigen::Index>(channel.in_dim());
  const double accept = delta + config.accept_slack;

  ReachResult result;
  result.best_distance = std::numeric_limits<double>::infinity();
  result.lower_bound = 0.0;
  Matrix best_sigma;

  Rng rng(seed);
  const int starts = 1 + std::max(0, config.restarts);
  for (int start = 0; start < starts; ++start) {
    Vector v;
    if (start == 0) {
      // Warm start: the pure input with the largest overlap of its output with the target.
      Eigen::SelfAdjointEigenSolver<Matrix> es(channel.adjoint_raw(obj.target));
      v = es.eigenvectors().col(in - 1);
    } else {
      v = random_pure(channel.in_dim(), rng).vector();
    }
    Matrix sigma = linalg::projector(v);
    Matrix output = channel.apply_raw(sigma);
    double f = obj.at(output);
    ++result.starts;
    if (config.record_history) result.history.push_back({f});

    for (int it = 0; it < config.max_iterations && f > accept; ++it) {
      ++result.iterations;
      Eigen::SelfAdjointEigenSolver<Matrix> diff(output - obj.target);
      const RealVector& lam = diff.eigenvalues();
      RealVector sign(lam.size());
      for (Eigen::Index k = 0; k < lam.size(); ++k) sign(k) = lam(k) > 0 ? 0.5 : (lam(k) < 0 ? -0.5 : 0.0);
      const Matrix g = diff.eigenvectors() * sign.cast<Complex>().asDiagonal() *
                       diff.eigenvectors().adjoint();
      const Matrix h = channel.adjoint_raw(g);
      Eigen::SelfAdjointEigenSolver<Matrix> lin(0.5 * (h + h.adjoint()));
      const double lambda_min = lin.eigenvalues()(0);

      // Weak duality: min over all states of Tr(G (E(s) - P)) bounds the optimum below.
      const double dual = lambda_min - (g * obj.target).trace().real();
      result.lower_bound = std::max(result.lower_bound, dual);
      const double gap = (h * sigma).trace().real() - lambda_min;
      if (result.lower_bound > accept || gap <= config.tolerance) break;

      const Matrix vertex = linalg::projector(lin.eigenvectors().col(0));
      const Matrix vertex_out = channel.apply_raw(vertex);
      const auto [t, f_new] = line_search(obj, output, vertex_out, f);
      const double improvement = f - f_new;
      if (t > 0.0) {
        sigma = (1.0 - t) * sigma + t * vertex;
        output = (1.0 - t) * output + t * vertex_out;
        f = f_new;
      }
      if (config.record_history) result.history.back().push_back(f);
      if (improvement < config.tolerance) break;
    }

    if (f < result.best_distance) {
      result.best_distance = f;
      best_sigma = sigma;
    }
    if (result.best_distance <= accept || result.lower_bound > accept) break;
  }

  if (result.best_distance <= accept) {
    result.witness = make_density(0.5 * (best_sigma + best_sigma.adjoint()), channel.in_basis());
    // Report the distance of the validated state actually returned.
    result.best_distance = obj.at(channel.apply_raw(result.witness->matrix()));
  }
  return result;
}

}  // namespace qcount
