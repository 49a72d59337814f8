#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcount/machine.hpp"
#include "qcount/net.hpp"

namespace qcount {

struct CatalogEntry {
  std::string x;
  std::size_t net_index = 0;
  double distance = 0.0;  ///< ||run(M, sigma_j) - |x><x|||_Tr
};

/// Classical strings delta-produced by a machine from net inputs, in
/// discovery order (net index, then string index), first discovery wins.
struct OutputCatalog {
  MachineSpec machine;
  int n = 0;
  double delta = 0.0;
  double net_epsilon = 0.0;
  bool net_certified = false;
  std::size_t net_size = 0;
  std::string net_fingerprint;
  std::vector<CatalogEntry> entries;

  std::size_t size() const { return entries.size(); }
  /// delta + net_epsilon: the tolerance the catalog certifies for arbitrary
  /// inputs of base length <= n when the net is certified.
  double delta_eff() const { return delta + net_epsilon; }
  /// log2(size), 0 for an empty catalog.
  double log2_size() const;
  /// ceil(n / (1 - 4 delta)), the length term of an index program; nullopt
  /// for delta >= 1/4.
  std::optional<long> index_length_term() const;
  std::vector<std::string> strings() const;
  bool contains(const std::string& x) const;
};

/// Tolerance added to delta when comparing achieved trace distances.
inline constexpr double kCatalogSlack = 1e-12;

/// One pass over the net: for every point sigma_j, every output string x of
/// length <= M.out_n() with ||run(M, sigma_j) - |x><x|||_Tr <= delta joins
/// the catalog. Requires net.basis.n() == M.n() and delta >= 0; for a
/// certified net additionally delta > net.epsilon (DomainError otherwise).
/// Parallel evaluation over net points gives the sequential result.
OutputCatalog enumerate_outputs(const QuantumMachine& machine, double delta, const StateNet& net,
                                std::size_t threads = 1);

/// The i-th (1-based) catalog string. Throws IndexBeyondCountError past the
/// end and DomainError for i = 0.
std::string index_program(std::size_t i, const QuantumMachine& machine, double delta,
                          const StateNet& net, std::size_t threads = 1);

struct AdaptiveResult {
  std::string x;
  double final_delta = 0.0;
  int halvings = 0;
  std::size_t catalog_size = 0;
};

/// Catalog strings for a given delta.
using CatalogProvider = std::function<std::vector<std::string>(double delta)>;
/// Net used at a given delta.
using NetFamily = std::function<const StateNet&(double delta)>;

inline constexpr double kAdaptiveStartDelta = 1.0 / 6.0;
inline constexpr int kMaxHalvings = 64;

/// Starting from delta = 1/6, halves delta until the catalog has at most
/// 2^(n+1) entries, then returns the i-th entry. Throws DomainError for i = 0
/// or i > 2^(n+1), IndexBeyondCountError when i exceeds the final catalog.
AdaptiveResult index_program_adaptive(std::size_t i, int n, const CatalogProvider& provider);
AdaptiveResult index_program_adaptive(std::size_t i, const QuantumMachine& machine,
                                      const NetFamily& nets, std::size_t threads = 1);

/// enumerate_outputs at delta = 1/k. Throws DomainError for k < 5.
OutputCatalog s_set(const QuantumMachine& machine, int k, const StateNet& net,
                    std::size_t threads = 1);

}  // namespace qcount
