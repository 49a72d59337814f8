#include "qcount/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "qcount/parallel.hpp"

namespace qcount {

double OutputCatalog::log2_size() const {
  return entries.empty() ? 0.0 : std::log2(static_cast<double>(entries.size()));
}

std::optional<long> OutputCatalog::index_length_term() const {
  if (delta >= 0.25) return std::nullopt;
  return static_cast<long>(std::ceil(n / (1.0 - 4.0 * delta) - 1e-12));
}

std::vector<std::string> OutputCatalog::strings() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.x);
  return out;
}

bool OutputCatalog::contains(const std::string& x) const {
  return std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.x == x; });
}

OutputCatalog enumerate_outputs(const QuantumMachine& machine, double delta, const StateNet& net,
                                std::size_t threads) {
  if (net.basis.n() != machine.n()) {
    throw DimensionError("net length bound " + std::to_string(net.basis.n()) +
                         " does not match machine length bound " + std::to_string(machine.n()));
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError("delta must be a finite value >= 0");
  if (net.certified() && !(delta > net.epsilon)) {
    std::ostringstream msg;
    msg << "delta " << delta << " must exceed the net covering radius " << net.epsilon
        << " (catalogs certify tolerance delta_eff = delta + epsilon)";
    throw DomainError(msg.str());
  }

  const Channel& channel = machine.channel();
  const std::size_t out_dim = channel.out_dim();
  const StringBasis out_basis = machine.output_basis();

  struct Hit {
    std::size_t string_index;
    double distance;
  };
  std::vector<std::vector<Hit>> hits(net.points.size());
  parallel_for(net.points.size(), threads, [&](std::size_t j) {
    const Matrix out = channel.apply_raw(net.points[j].matrix());
    for (std::size_t x = 0; x < out_dim; ++x) {
      const auto xi = static_cast<Eigen::Index>(x);
      // 1 - <x|rho|x> is a lower bound on the trace distance.
      if (1.0 - out(xi, xi).real() > delta + kCatalogSlack) continue;
      Matrix diff = out;
      diff(xi, xi) -= 1.0;
      const double t = linalg::half_trace_norm(diff);
      if (t <= delta + kCatalogSlack) hits[j].push_back({x, t});
    }
  });

  OutputCatalog catalog;
  catalog.machine = machine.spec();
  catalog.n = machine.n();
  catalog.delta = delta;
  catalog.net_epsilon = net.epsilon;
  catalog.net_certified = net.certified();
  catalog.net_size = net.points.size();
  catalog.net_fingerprint = net.fingerprint;
  std::vector<bool> seen(out_dim, false);
  for (std::size_t j = 0; j < hits.size(); ++j) {
    for (const Hit& h : hits[j]) {
      if (seen[h.string_index]) continue;
      seen[h.string_index] = true;
      catalog.entries.push_back({out_basis.string_at(h.string_index), j, h.distance});
    }
  }
  return catalog;
}

std::string index_program(std::size_t i, const QuantumMachine& machine, double delta,
                          const StateNet& net, std::size_t threads) {
  if (i == 0) throw DomainError("index must be at least 1");
  const OutputCatalog catalog = enumerate_outputs(machine, delta, net, threads);
  if (i > catalog.size()) {
    throw IndexBeyondCountError("index beyond output count: i=" + std::to_string(i) +
                                " but the catalog has " + std::to_string(catalog.size()) +
                                " entries");
  }
  return catalog.entries[i - 1].x;
}

AdaptiveResult index_program_adaptive(std::size_t i, int n, const CatalogProvider& provider) {
  if (n < 0 || n > 24) throw DomainError("length bound must lie in [0, 24]");
  const std::size_t cap = std::size_t{1} << (n + 1);
  if (i == 0) throw DomainError("index must be at least 1");
  if (i > cap) {
    throw DomainError("index " + std::to_string(i) + " exceeds the cap 2^(n+1) = " +
                      std::to_string(cap));
  }
  AdaptiveResult result;
  double delta = kAdaptiveStartDelta;
  for (int m = 0;; ++m) {
    const auto list = provider(delta);
    if (list.size() <= cap) {
      result.final_delta = delta;
      result.halvings = m;
      result.catalog_size = list.size();
      if (i > list.size()) {
        throw IndexBeyondCountError("index beyond output count: i=" + std::to_string(i) +
                                    " but the catalog at delta=" + std::to_string(delta) +
                                    " has " + std::to_string(list.size()) + " entries");
      }
      result.x = list[i - 1];
      return result;
    }
    if (m + 1 >= kMaxHalvings) {
      throw DomainError("catalog still exceeds 2^(n+1) entries after " +
                        std::to_string(kMaxHalvings) + " halvings");
    }
    delta /= 2.0;
  }
}

AdaptiveResult index_program_adaptive(std::size_t i, const QuantumMachine& machine,
                                      const NetFamily& nets, std::size_t threads) {
  return index_program_adaptive(i, machine.n(), [&](double delta) {
    return enumerate_outputs(machine, delta, nets(delta), threads).strings();
  });
}

OutputCatalog s_set(const QuantumMachine& machine, int k, const StateNet& net,
                    std::size_t threads) {
  if (k < 5) throw DomainError("k must be at least 5");
  return enumerate_outputs(machine, 1.0 / k, net, threads);
}

}  // namespace qcount
