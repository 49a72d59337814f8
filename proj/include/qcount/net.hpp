#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcount/basis.hpp"
#include "qcount/density.hpp"
#include "qcount/errors.hpp"

namespace qcount {

/// Construction parameters of a state net. Candidates are, in order: the
/// computational basis states, a grid of pure states (per-coordinate
/// magnitude and phase quantization on supports of at most `max_support`
/// coordinates, leading coordinate real), the maximally mixed state, seeded
/// convex combinations of grid states with weights on a uniform grid, and
/// seeded random density operators. Candidates within
/// thinning * epsilon of an already kept point are dropped.
struct NetConfig {
  int n = 1;
  double epsilon = 0.2;
  int magnitude_levels = 4;
  int phase_levels = 8;
  int max_support = 3;
  double weight_step = 0.0;  ///< 0 means epsilon / 2
  int max_mixture_terms = 3;
  std::size_t mixtures = 40000;
  std::size_t random_fill = 30000;  ///< extra seeded induced-measure candidates
  double thinning = 0.8;
  std::size_t max_points = 250000;
  std::uint64_t seed = 1;
  bool certify = true;
  std::size_t certificate_samples = 10000;
};

/// Outcome of the sampled covering check.
struct CoverReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  /// Largest nearest-point distance over covered samples, or over the
  /// examined violators when there are any.
  double worst_distance = 0.0;
  std::optional<DensityOperator> worst_sample;
  bool passed() const { return violations == 0; }
};

struct StateNet {
  StringBasis basis;
  double epsilon;
  std::vector<DensityOperator> points;
  NetConfig config;
  std::string fingerprint;
  std::optional<CoverReport> certificate;  ///< absent for uncertified nets

  bool certified() const { return certificate && certificate->passed(); }
};

/// Thrown by build_net when the covering certificate finds a violation.
class NetCertificateError : public Error {
 public:
  NetCertificateError(const std::string& what, CoverReport report)
      : Error(what), report_(std::move(report)) {}
  const CoverReport& report() const { return report_; }

 private:
  CoverReport report_;
};

/// Net at the spec'd covering radius for each length bound: n = 1 -> 0.2,
/// n = 2 -> 0.25, n = 3 -> 0.3, n = 0 -> any.
NetConfig default_net_config(int n);

/// Dense uncertified net used for enumeration runs (nominal radius 0.02).
NetConfig enumeration_net_config(int n);

/// Builds the net and, when config.certify, runs the covering certificate.
/// Throws NetCertificateError on violation, DomainError for bad parameters.
StateNet build_net(const NetConfig& config);

/// Independent covering check: `samples` seeded random density operators
/// (induced measure, rank uniform in 1..dim), each compared against its
/// nearest net point. At most `exact_violators` violators get an exhaustive
/// nearest-point search for the worst-case report.
CoverReport covering_certificate(const StateNet& net, std::size_t samples, std::uint64_t seed,
                                 std::size_t exact_violators = 32);

/// Deterministic identifier of the construction parameters.
std::string net_fingerprint(const NetConfig& config);

}  // namespace qcount
