#include "qcount/net.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "qcount/parallel.hpp"
#include "qcount/random.hpp"

namespace qcount {

namespace {

constexpr int kHashCoords = 4;

// Real coordinates used for bucketing. Each is an entry (or the real or
// imaginary part of one), so |coordinate difference| <= trace distance.
std::array<double, kHashCoords> hash_coords(const Matrix& m) {
  const Eigen::Index d = m.rows();
  std::array<double, kHashCoords> c{0.0, 0.0, 0.0, 0.0};
  if (d == 1) return c;
  if (d == 2) return {m(0, 0).real(), m(0, 1).real(), m(0, 1).imag(), 0.0};
  if (d == 3) return {m(0, 0).real(), m(1, 1).real(), m(0, 1).real(), m(0, 1).imag()};
  return {m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(0, 1).real()};
}

class SpatialIndex {
 public:
  explicit SpatialIndex(double cell) : cell_(cell) {}

  void insert(const Matrix& m, std::uint32_t id) { buckets_[key(cells(m))].push_back(id); }

  // Calls visit(id) for every stored id whose cell is adjacent to m's cell;
  // stops early when visit returns true. Complete for radius <= cell.
  template <typename Visit>
  bool visit_neighbors(const Matrix& m, Visit&& visit) const {
    const auto base = cells(m);
    std::array<std::int64_t, kHashCoords> c{};
    for (int code = 0; code < 81; ++code) {
      int rest = code;
      for (int k = 0; k < kHashCoords; ++k) {
        c[k] = base[k] + (rest % 3) - 1;
        rest /= 3;
      }
      auto it = buckets_.find(key(c));
      if (it == buckets_.end()) continue;
      for (std::uint32_t id : it->second) {
        if (visit(id)) return true;
      }
    }
    return false;
  }

 private:
  std::array<std::int64_t, kHashCoords> cells(const Matrix& m) const {
    const auto x = hash_coords(m);
    std::array<std::int64_t, kHashCoords> c{};
    for (int k = 0; k < kHashCoords; ++k) c[k] = static_cast<std::int64_t>(std::floor(x[k] / cell_));
    return c;
  }
  static std::uint64_t key(const std::array<std::int64_t, kHashCoords>& c) {
    std::uint64_t h = 0;
    for (auto v : c) h = (h << 16) ^ static_cast<std::uint64_t>(v + 0x8000);
    return h;
  }

  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

// Upper triangle of a Hermitian matrix as reals, off-diagonal entries
// scaled by sqrt(2) so that squared Euclidean distance equals squared
// Frobenius distance.
class PackedPoints {
 public:
  explicit PackedPoints(std::size_t dim) : dim_(dim), stride_(dim * dim) {}

  void push(const Matrix& m) {
    const auto d = static_cast<Eigen::Index>(dim_);
    for (Eigen::Index r = 0; r < d; ++r) {
      data_.push_back(m(r, r).real());
      for (Eigen::Index c = r + 1; c < d; ++c) {
        data_.push_back(kRoot2 * m(r, c).real());
        data_.push_back(kRoot2 * m(r, c).imag());
      }
    }
  }
  std::vector<double> pack(const Matrix& m) const {
    PackedPoints tmp(dim_);
    tmp.push(m);
    return std::move(tmp.data_);
  }
  // False as soon as the Frobenius distance provably exceeds 2 * radius,
  // which implies a trace distance above radius.
  bool frobenius_close(const std::vector<double>& x, std::size_t id, double radius) const {
    const double limit = 4.0 * radius * radius;
    const double* p = data_.data() + id * stride_;
    double acc = 0.0;
    for (std::size_t k = 0; k < stride_; ++k) {
      const double t = x[k] - p[k];
      acc += t * t;
      if (acc > limit) return false;
    }
    return true;
  }

 private:
  static constexpr double kRoot2 = 1.4142135623730951;
  std::size_t dim_;
  std::size_t stride_;
  std::vector<double> data_;
};

// True when (1/2)||a - b||_1 <= radius; *distance receives the exact value
// whenever it had to be computed.
bool within(const Matrix& a, const Matrix& b, double radius, double* distance = nullptr) {
  const Matrix diff = a - b;
  if (linalg::max_abs(diff) > radius) return false;
  const double frob = diff.norm();
  if (0.5 * frob > radius) return false;
  const double t = linalg::half_trace_norm(diff);
  if (distance) *distance = t;
  return t <= radius;
}

std::vector<Vector> pure_grid(std::size_t d, const NetConfig& cfg) {
  std::vector<Vector> out;
  const int support_max = std::min<int>(cfg.max_support, static_cast<int>(d));
  const double kTwoPi = 2.0 * std::acos(-1.0);
  for (int k = 2; k <= support_max; ++k) {
    std::vector<int> sel(static_cast<std::size_t>(k));
    std::iota(sel.begin(), sel.end(), 0);
    for (;;) {
      // magnitudes: L^k choices; phases: P^(k-1) choices.
      std::vector<int> mag(static_cast<std::size_t>(k), 1);
      std::vector<int> ph(static_cast<std::size_t>(k - 1), 0);
      for (;;) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
        v(sel[0]) = static_cast<double>(mag[0]);
        for (int j = 1; j < k; ++j) {
          v(sel[static_cast<std::size_t>(j)]) =
              std::polar(static_cast<double>(mag[static_cast<std::size_t>(j)]),
                         kTwoPi * ph[static_cast<std::size_t>(j - 1)] / cfg.phase_levels);
        }
        v.normalize();
        out.push_back(std::move(v));
        int pos = 0;
        for (; pos < 2 * k - 1; ++pos) {
          if (pos < k) {
            if (++mag[static_cast<std::size_t>(pos)] <= cfg.magnitude_levels) break;
            mag[static_cast<std::size_t>(pos)] = 1;
          } else {
            if (++ph[static_cast<std::size_t>(pos - k)] < cfg.phase_levels) break;
            ph[static_cast<std::size_t>(pos - k)] = 0;
          }
        }
        if (pos == 2 * k - 1) break;
      }
      int i = k - 1;
      while (i >= 0 && sel[static_cast<std::size_t>(i)] == static_cast<int>(d) - k + i) --i;
      if (i < 0) break;
      ++sel[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) sel[static_cast<std::size_t>(j)] = sel[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

void validate(const NetConfig& cfg) {
  if (cfg.n < 0 || cfg.n > 4) throw DomainError("net length bound must lie in [0, 4]");
  if (!(cfg.epsilon > 0.0) || cfg.epsilon > 1.0) throw DomainError("net epsilon must lie in (0, 1]");
  if (cfg.magnitude_levels < 1 || cfg.phase_levels < 1) throw DomainError("grid levels must be positive");
  if (cfg.max_support < 1) throw DomainError("max_support must be positive");
  if (cfg.max_mixture_terms < 2 && cfg.mixtures > 0) throw DomainError("mixtures need at least two terms");
  if (!(cfg.thinning > 0.0) || cfg.thinning > 1.0) throw DomainError("thinning must lie in (0, 1]");
  if (cfg.weight_step < 0.0 || cfg.weight_step > 1.0) throw DomainError("weight_step must lie in [0, 1]");
}

}  // namespace

NetConfig default_net_config(int n) {
  NetConfig cfg;
  cfg.n = n;
  switch (n) {
    case 0:
    case 1:
      cfg.epsilon = 0.2;
      cfg.thinning = 0.7;
      break;
    case 2:
      cfg.epsilon = 0.25;
      cfg.max_support = 2;
      cfg.mixtures = 3000;
      cfg.random_fill = 8000;
      break;
    default:
      cfg.epsilon = 0.3;
      cfg.max_support = 2;
      cfg.mixtures = 10000;
      cfg.random_fill = 10000;
      cfg.certificate_samples = 2000;
      break;
  }
  return cfg;
}

NetConfig enumeration_net_config(int n) {
  NetConfig cfg;
  cfg.n = n;
  cfg.epsilon = 0.02;
  cfg.thinning = 1.0;
  cfg.max_support = n >= 2 ? 2 : 3;
  cfg.mixtures = n >= 2 ? 2000 : 4000;
  cfg.random_fill = n >= 2 ? 2000 : 4000;
  cfg.max_points = 20000;
  cfg.certify = false;
  return cfg;
}

std::string net_fingerprint(const NetConfig& c) {
  std::ostringstream s;
  s.precision(17);
  s << "net/v1|" << c.n << '|' << c.epsilon << '|' << c.magnitude_levels << '|' << c.phase_levels
    << '|' << c.max_support << '|' << c.weight_step << '|' << c.max_mixture_terms << '|'
    << c.mixtures << '|' << c.random_fill << '|' << c.thinning << '|' << c.max_points << '|'
    << c.seed;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

StateNet build_net(const NetConfig& cfg) {
  validate(cfg);
  const StringBasis basis(cfg.n);
  const std::size_t d = basis.dim();
  const double radius = cfg.thinning * cfg.epsilon;

  StateNet net{basis, cfg.epsilon, {}, cfg, net_fingerprint(cfg), std::nullopt};
  SpatialIndex index(cfg.epsilon);
  PackedPoints packed(d);

  auto offer = [&](Matrix m) {
    if (net.points.size() >= cfg.max_points) return;
    const auto x = packed.pack(m);
    const bool covered = index.visit_neighbors(m, [&](std::uint32_t id) {
      return packed.frobenius_close(x, id, radius) && within(m, net.points[id].matrix(), radius);
    });
    if (covered) return;
    index.insert(m, static_cast<std::uint32_t>(net.points.size()));
    packed.push(m);
    net.points.push_back(DensityOperator::trusted(std::move(m), basis));
  };

  std::vector<Vector> pures;
  for (std::size_t k = 0; k < d; ++k) pures.push_back(PureState::unit(d, k).vector());
  for (auto& v : pure_grid(d, cfg)) pures.push_back(std::move(v));
  for (const auto& v : pures) offer(linalg::projector(v));
  if (d > 1) offer(Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) /
                   static_cast<double>(d));

  Rng rng(derive_seed(cfg.seed, {0x6e6574ULL, static_cast<std::uint64_t>(cfg.n)}));
  if (d > 1) {
    const double step = cfg.weight_step > 0.0 ? cfg.weight_step : cfg.epsilon / 2.0;
    const int units = std::max(1, static_cast<int>(std::lround(1.0 / step)));
    std::uniform_int_distribution<std::size_t> pick(0, pures.size() - 1);
    std::uniform_int_distribution<int> terms(2, cfg.max_mixture_terms);
    for (std::size_t t = 0; t < cfg.mixtures; ++t) {
      const int k = terms(rng);
      std::uniform_int_distribution<int> slot(0, k - 1);
      std::vector<int> count(static_cast<std::size_t>(k), 0);
      for (int u = 0; u < units; ++u) ++count[static_cast<std::size_t>(slot(rng))];
      Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (int j = 0; j < k; ++j) {
        const Vector& v = pures[pick(rng)];
        if (count[static_cast<std::size_t>(j)] > 0) {
          m += (static_cast<double>(count[static_cast<std::size_t>(j)]) / units) * linalg::projector(v);
        }
      }
      offer(std::move(m));
    }
    for (std::size_t t = 0; t < cfg.random_fill; ++t) {
      offer(random_density(d, rng).matrix());
    }
  }

  if (cfg.certify) {
    const auto cert_seed = derive_seed(cfg.seed, {0x63657274ULL, static_cast<std::uint64_t>(cfg.n)});
    CoverReport report = covering_certificate(net, cfg.certificate_samples, cert_seed);
    net.certificate = report;
    if (!report.passed()) {
      std::ostringstream msg;
      msg << "net for n=" << cfg.n << " at epsilon=" << cfg.epsilon << " failed its covering check: "
          << report.violations << " of " << report.samples
          << " samples lie farther than epsilon from every net point (worst distance "
          << report.worst_distance << ", net size " << net.points.size() << ")";
      throw NetCertificateError(msg.str(), std::move(report));
    }
  }
  return net;
}

CoverReport covering_certificate(const StateNet& net, std::size_t samples, std::uint64_t seed,
                                 std::size_t exact_violators) {
  const std::size_t d = net.basis.dim();
  const double eps = net.epsilon;
  SpatialIndex index(eps);
  PackedPoints packed(d);
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    index.insert(net.points[i].matrix(), static_cast<std::uint32_t>(i));
    packed.push(net.points[i].matrix());
  }

  struct Slot {
    bool violated = false;
    double nearest = 0.0;  // exact nearest distance when covered, else +inf
  };
  std::vector<Slot> slots(samples);
  parallel_for(samples, default_thread_count(), [&](std::size_t s) {
    Rng rng(derive_seed(seed, {s}));
    const Matrix x = random_density(d, rng).matrix();
    const auto px = packed.pack(x);
    double best = std::numeric_limits<double>::infinity();
    index.visit_neighbors(x, [&](std::uint32_t id) {
      const double r = std::min(best, eps);
      double t = std::numeric_limits<double>::infinity();
      if (packed.frobenius_close(px, id, r) && within(x, net.points[id].matrix(), r, &t)) best = t;
      return false;
    });
    slots[s].violated = !(best <= eps);
    slots[s].nearest = best;
  });

  CoverReport report;
  report.samples = samples;
  std::size_t examined = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    if (slots[s].violated) {
      ++report.violations;
      if (examined >= exact_violators) continue;
      ++examined;
      Rng rng(derive_seed(seed, {s}));
      const DensityOperator x = random_density(d, rng, 0, net.basis);
      const auto px = packed.pack(x.matrix());
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t id = 0; id < net.points.size(); ++id) {
        double t = std::numeric_limits<double>::infinity();
        if (packed.frobenius_close(px, id, best) && within(x.matrix(), net.points[id].matrix(), best, &t)) {
          best = t;
        }
      }
      if (examined == 1 || best > report.worst_distance) {
        report.worst_distance = best;
        report.worst_sample = x;
      }
    }
  }
  if (report.violations == 0) {
    for (std::size_t s = 0; s < samples; ++s) {
      if (slots[s].nearest > report.worst_distance || s == 0) {
        report.worst_distance = slots[s].nearest;
        Rng rng(derive_seed(seed, {s}));
        report.worst_sample = random_density(d, rng, 0, net.basis);
      }
    }
  }
  return report;
}

}  // namespace qcount
