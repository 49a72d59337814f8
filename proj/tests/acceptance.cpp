// Acceptance checks. Usage: acceptance [criterion|all]; prints one
// "PASS <name>: ..." or "FAIL <name>: ..." line per criterion and exits
// nonzero if any selected criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qcount/classical.hpp"
#include "qcount/counting.hpp"
#include "qcount/enumeration.hpp"
#include "qcount/errors.hpp"
#include "qcount/machine.hpp"
#include "qcount/net.hpp"
#include "qcount/parallel.hpp"
#include "qcount/random.hpp"

using namespace qcount;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::vector<PureState> units(std::size_t d) {
  std::vector<PureState> v;
  for (std::size_t k = 0; k < d; ++k) v.push_back(PureState::unit(d, k));
  return v;
}

// Random pair (rho, sigma) on C^d with sigma pulled toward rho by a uniform factor.
std::pair<DensityOperator, DensityOperator> close_pair(std::size_t d, Rng& rng) {
  const auto a = random_density(d, rng);
  const auto b = random_density(d, rng);
  const double s = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return {a, DensityOperator::trusted((1 - s) * a.matrix() + s * b.matrix())};
}

Verdict lemma_campaign() {
  const auto t0 = Clock::now();
  const std::uint64_t seed = 20240601;
  const std::size_t threads = default_thread_count();
  std::size_t instances = 0, failures = 0, nonvacuous = 0, bound_violations = 0;
  std::string first_failure;
  for (std::size_t d : {2, 4, 8}) {
    const auto targets = units(d);
    for (double delta : {0.0, 0.05, 0.1, 0.15}) {
      for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng(derive_seed(seed, {d, i}));
        const Channel e = random_channel(d, d, rng, 1 + i % d);
        const auto report = verify_counting_instance(e, targets, delta, {}, derive_seed(seed, {d, i, 1}), threads);
        std::vector<PureState> hit;
        std::vector<DensityOperator> wit;
        for (const auto& w : report.witnesses) {
          hit.push_back(targets[w.target_index]);
          wit.push_back(w.input);
        }
        const auto chain = replay_proof_chain(e, hit, wit, delta);
        ++instances;
        nonvacuous += report.achieved > 0;
        if (report.achieved > 0 && report.achieved_log2N > report.bound_log2N) ++bound_violations;
        if (!report.pass || !chain.passes()) {
          ++failures;
          if (first_failure.empty()) {
            first_failure = " first failure d=" + std::to_string(d) + " delta=" + fmt(delta) +
                            " instance=" + std::to_string(i);
          }
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = failures == 0 && bound_violations == 0 && secs < 300.0;
  return {pass, std::to_string(instances) + " instances, " + std::to_string(nonvacuous) +
                    " with witnesses, " + std::to_string(failures) + " proof-chain failures, " +
                    std::to_string(bound_violations) + " bound violations, " + fmt(secs, 3) + " s (budget 300 s)" +
                    first_failure};
}

Verdict tightness() {
  std::string detail;
  bool pass = true;
  for (std::size_t d = 2; d <= 8; ++d) {
    const auto r = verify_counting_instance(Channel::identity(d), units(d), 0.0, {}, 1);
    const double log2d = std::log2(static_cast<double>(d));
    const bool ok = r.achieved == d && r.achieved_log2N == log2d && r.bound_log2N == log2d;
    pass = pass && ok;
    if (!ok) detail += " d=" + std::to_string(d) + " achieved " + fmt(r.achieved_log2N);
  }
  return {pass, "identity channel, d = 2..8, delta = 0: achieved log2 N = log2 d = bound" + detail};
}

Verdict bound_arithmetic() {
  const double b = counting_bound(7, 0.125);
  bool ok = std::abs(b - 8.6147) <= 1e-4;
  double worst = 0.0;
  for (std::size_t d = 1; d <= 64; ++d) {
    worst = std::max(worst, std::abs(counting_bound(d, 1e-9) - std::log2(static_cast<double>(d))));
  }
  ok = ok && worst < 1e-6;
  bool rejected = true;
  for (double delta : {kDeltaLimit, 0.19, 0.2, 0.25, 1.0}) {
    try {
      counting_bound(4, delta);
      rejected = false;
    } catch (const DomainError&) {
    }
  }
  ok = ok && rejected;
  return {ok, "counting_bound(7, 1/8) = " + fmt(b, 8) + ", max |bound(d, 1e-9) - log2 d| = " + fmt(worst, 3) +
                  ", delta >= 1/(2e) rejected: " + (rejected ? "yes" : "no")};
}

Verdict fannes() {
  Rng rng(derive_seed(77, {0x66616eULL}));
  std::size_t pairs = 0, violations = 0;
  double worst_slack = -1.0;
  while (pairs < 1000) {
    const std::size_t d = 2 + pairs % 7;
    auto [a, b] = close_pair(d, rng);
    const double t = trace_distance(a, b);
    if (t > kFannesLimit) continue;
    ++pairs;
    const double gap = std::abs(von_neumann_entropy(a) - von_neumann_entropy(b));
    const double bound = fannes_bound(t, d);
    worst_slack = std::max(worst_slack, gap - bound);
    if (gap > bound + 1e-8) ++violations;
  }
  const auto ex = fannes_check(make_density((Matrix(2, 2) << 1, 0, 0, 0).finished()),
                               make_density((Matrix(2, 2) << 0.9, 0, 0, 0.1).finished()));
  const bool example = std::abs(ex.entropy_gap - 0.46900) <= 1e-4 && std::abs(ex.bound - 0.66439) <= 1e-4 &&
                       ex.status == FannesStatus::kPass;
  return {violations == 0 && example,
          std::to_string(pairs) + " pairs with T <= 1/e at d <= 8, " + std::to_string(violations) +
              " violations (max gap - bound = " + fmt(worst_slack, 4) + "); qubit example |dS| = " +
              fmt(ex.entropy_gap, 5) + " vs bound " + fmt(ex.bound, 5)};
}

Verdict data_processing() {
  Rng rng(derive_seed(78, {0x6470ULL}));
  std::size_t td_fail = 0, re_fail = 0, finite = 0;
  double worst_td = -1.0, worst_re = -1.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t in = 1 + static_cast<std::size_t>(t) % 8;
    const std::size_t out = 1 + static_cast<std::size_t>(t / 8) % 8;
    const Channel e = random_channel(in, out, rng);
    const auto a = random_density(in, rng);
    const auto b = random_density(in, rng, in);
    const auto ea = apply(e, a), eb = apply(e, b);
    const double dtd = trace_distance(ea, eb) - trace_distance(a, b);
    worst_td = std::max(worst_td, dtd);
    td_fail += dtd > 1e-9;
    const double r_in = relative_entropy(a, b);
    if (std::isfinite(r_in)) {
      ++finite;
      const double dre = relative_entropy(ea, eb) - r_in;
      worst_re = std::max(worst_re, dre);
      re_fail += dre > 1e-8;
    }
  }
  return {td_fail == 0 && re_fail == 0,
          "1000 random channels: trace distance violations " + std::to_string(td_fail) + " (max increase " +
              fmt(worst_td, 3) + "), relative entropy violations " + std::to_string(re_fail) + " of " +
              std::to_string(finite) + " finite (max increase " + fmt(worst_re, 3) + ")"};
}

MachineSpec spec_of(MachineFamily f, int n, std::uint64_t seed) {
  MachineSpec s;
  s.family = f;
  s.n = n;
  s.seed = seed;
  if (f == MachineFamily::kDephasingCompose) s.mix = 0.1;
  return s;
}

const std::array<MachineFamily, 4> kFamilies{MachineFamily::kIdentity, MachineFamily::kBasisPermutation,
                                             MachineFamily::kSeededRandomUnitary,
                                             MachineFamily::kDephasingCompose};

const StateNet& enumeration_net(int n) {
  static std::vector<std::unique_ptr<StateNet>> nets(5);
  if (!nets[static_cast<std::size_t>(n)]) {
    nets[static_cast<std::size_t>(n)] = std::make_unique<StateNet>(build_net(enumeration_net_config(n)));
  }
  return *nets[static_cast<std::size_t>(n)];
}

std::set<std::string> as_set(const OutputCatalog& c) {
  const auto v = c.strings();
  return {v.begin(), v.end()};
}

Verdict enumeration() {
  const auto t0 = Clock::now();
  const std::size_t threads = default_thread_count();
  bool pass = true;
  std::size_t compliance_checks = 0, skipped = 0;
  std::string detail;
  for (int n : {1, 2}) {
    const auto& net = enumeration_net(n);
    const std::size_t cap = std::size_t{1} << (n + 1);
    for (auto f : kFamilies) {
      const auto m = make_machine(spec_of(f, n, 31));
      std::vector<std::set<std::string>> by_delta;
      for (double delta : {1.0 / 6.0, 1.0 / 8.0, 1.0 / 16.0}) {
        const auto c = enumerate_outputs(m, delta, net, threads);
        by_delta.push_back(as_set(c));
        if (c.delta_eff() < kDeltaLimit) {
          ++compliance_checks;
          if (c.size() > 0 && c.log2_size() > counting_bound(StringBasis::dim_for(n), c.delta_eff())) {
            pass = false;
            detail += " compliance violated for " + to_string(f) + " n=" + std::to_string(n);
          }
        } else {
          ++skipped;
        }
        if (f == MachineFamily::kIdentity && n == 1) {
          const auto s = c.strings();
          if (s != std::vector<std::string>{"", "0", "1"}) {
            pass = false;
            detail += " identity catalog wrong at delta=" + fmt(delta);
          }
        }
      }
      for (std::size_t k = 1; k < by_delta.size(); ++k) {
        if (!std::includes(by_delta[k - 1].begin(), by_delta[k - 1].end(), by_delta[k].begin(), by_delta[k].end())) {
          pass = false;
          detail += " nesting broken for " + to_string(f) + " n=" + std::to_string(n);
        }
      }
      std::set<std::string> inter = as_set(s_set(m, 8, net, threads));
      for (int k : {16, 32}) {
        const auto s = as_set(s_set(m, k, net, threads));
        std::set<std::string> next;
        std::set_intersection(inter.begin(), inter.end(), s.begin(), s.end(), std::inserter(next, next.begin()));
        inter = std::move(next);
      }
      if (inter.size() > cap) {
        pass = false;
        detail += " intersection too large for " + to_string(f) + " n=" + std::to_string(n);
      }
    }
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 600.0;
  return {pass, std::to_string(compliance_checks) + " compliance checks (" + std::to_string(skipped) +
                    " cells with delta_eff >= 1/(2e) skipped), identity catalog, nesting and S_8/S_16/S_32 "
                    "intersection cap checked, " + fmt(secs, 3) + " s (budget 600 s)" + detail};
}

Verdict adaptive_index() {
  bool pass = true;
  std::size_t runs = 0, beyond = 0;
  std::string detail;
  for (int n : {1, 2}) {
    const auto& net = enumeration_net(n);
    const NetFamily nets = [&](double) -> const StateNet& { return net; };
    const std::size_t cap = std::size_t{1} << (n + 1);
    for (auto f : kFamilies) {
      const auto m = make_machine(spec_of(f, n, 41));
      for (std::size_t i = 1; i <= cap; ++i) {
        try {
          const auto r = index_program_adaptive(i, m, nets);
          ++runs;
          if (r.catalog_size > cap) pass = false;
        } catch (const IndexBeyondCountError&) {
          ++runs;
          ++beyond;
        }
      }
      try {
        index_program_adaptive(cap + 1, m, nets);
        pass = false;
        detail += " cap not enforced";
      } catch (const DomainError&) {
      }
    }
  }
  const CatalogProvider shrinking = [](double delta) {
    return std::vector<std::string>(delta > 0.05 ? 9 : 4, "0");
  };
  const auto r = index_program_adaptive(1, 1, shrinking);
  const bool halved = r.halvings == 2 && std::abs(r.final_delta - 1.0 / 24.0) < 1e-15 && r.catalog_size <= 4;
  pass = pass && halved;
  return {pass, std::to_string(runs) + " machine runs terminated (" + std::to_string(beyond) +
                    " past the final catalog), cap 2^(n+1) enforced; oversized catalog halved delta " +
                    std::to_string(r.halvings) + " times to " + fmt(r.final_delta) + detail};
}

Verdict net_certificate() {
  std::string detail;
  bool pass = true;
  for (int n : {1, 2}) {
    const auto cfg = default_net_config(n);
    detail += " n=" + std::to_string(n) + " eps=" + fmt(cfg.epsilon) + ": ";
    try {
      const auto net = build_net(cfg);
      detail += std::to_string(net.points.size()) + " points, 0 of " +
                std::to_string(net.certificate->samples) + " samples uncovered, worst " +
                fmt(net.certificate->worst_distance, 4) + ";";
    } catch (const NetCertificateError& e) {
      pass = false;
      detail += std::to_string(e.report().violations) + " of " + std::to_string(e.report().samples) +
                " samples uncovered, worst " + fmt(e.report().worst_distance, 4) + ";";
    }
  }
  return {pass, "10^4-sample covering check:" + detail};
}

Verdict embedding() {
  std::size_t produced = 0, missing = 0;
  std::string detail;
  for (int n : {3, 4}) {
    const auto m = make_classical_mirror(n, n);
    NetConfig cfg = enumeration_net_config(n);
    cfg.mixtures = 0;
    cfg.random_fill = 0;
    cfg.max_support = 1;
    const auto catalog = enumerate_outputs(m, 0.0, build_net(cfg));
    const StringBasis inputs(n);
    std::set<std::string> classical;
    for (std::size_t s = 0; s < inputs.dim(); ++s) {
      const auto out = run_classical(inputs.string_at(s));
      if (out && static_cast<int>(out->size()) <= n) classical.insert(*out);
    }
    produced += classical.size();
    for (const auto& x : classical) missing += !catalog.contains(x);
    detail += " n=" + std::to_string(n) + ": " + std::to_string(classical.size()) + " produced, catalog " +
              std::to_string(catalog.size()) + ";";
  }
  return {missing == 0 && produced > 0,
          "classically produced strings from programs of length <= n found in the delta = 0 catalog, " +
              std::to_string(missing) + " missing;" + detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Verdict determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "qcount_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"bound-table", "--command bound-table --dims 2,3,4,7,8 --deltas 0,0.05,0.125,0.18"},
      {"verify-lemma", "--command verify-lemma --dims 2,4 --deltas 0,0.1 --instances 10 --seed 5"},
      {"enumerate", "--command enumerate --machine-family seeded-random-unitary --n 2 --delta 0.125 --seed 5"},
      {"net-check", "--command net-check --n 1 --seed 5"},
      {"complexity-scan", "--command complexity-scan --lmax 16 --targets 00000,1111111"}};
  bool pass = true;
  std::string detail;
  for (const auto& [name, args] : commands) {
    std::vector<std::string> outputs;
    for (const char* env : {"QCOUNT_THREADS=1", "QCOUNT_THREADS=1", "QCOUNT_THREADS=4"}) {
      const auto path = dir / (name + ".out");
      std::filesystem::remove(path);
      const std::string cmd = std::string(env) + " " + QCOUNT_CLI_PATH + " " + args + " --out " + path.string() +
                              " 2>/dev/null";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) {
        pass = false;
        detail += " " + name + " exited with " + std::to_string(rc);
      }
      outputs.push_back(slurp(path));
    }
    const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2] && !outputs[0].empty();
    if (!same) {
      pass = false;
      detail += " " + name + " output differs";
    }
  }
  return {pass, std::to_string(commands.size()) +
                    " commands, each run twice single-threaded and once with 4 threads: byte-identical" + detail};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>> kCriteria{
    {"lemma-campaign", lemma_campaign}, {"tightness", tightness},
    {"bound-arithmetic", bound_arithmetic}, {"fannes", fannes},
    {"data-processing", data_processing}, {"enumeration", enumeration},
    {"adaptive-index", adaptive_index}, {"net-certificate", net_certificate},
    {"embedding", embedding}, {"determinism", determinism}};

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  bool any = false, all_pass = true;
  for (const auto& [name, check] : kCriteria) {
    if (which != "all" && which != name) continue;
    any = true;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
    all_pass = all_pass && v.pass;
  }
  if (!any) {
    std::cerr << "unknown criterion '" << which << "'\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
