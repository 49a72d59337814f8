// qcount: batch experiment runner (bound tables, counting campaigns,
// enumeration runs, net certification, classical complexity scans).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qcount/classical.hpp"
#include "qcount/counting.hpp"
#include "qcount/enumeration.hpp"
#include "qcount/machine.hpp"
#include "qcount/net.hpp"
#include "qcount/parallel.hpp"
#include "qcount/random.hpp"
#include "qcount/serialize.hpp"

namespace {

using namespace qcount;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::optional<std::uint64_t> seed;
  std::string out = "-";
  std::vector<int> dims;
  std::vector<double> deltas;
  std::string machine_family = "identity";
  int n = 1;
  std::optional<double> delta;
  std::optional<double> net_epsilon;
  int instances = 100;
  int lmax = 12;
  std::vector<std::string> targets;
  double mix = 0.0;
  int out_n = -1;
};

struct Outcome {
  std::string text;
  bool pass = true;
  std::string summary;
};

std::string fmt10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::uint64_t require_seed(const Options& o) {
  if (!o.seed) throw ConfigError("--seed is required for command '" + o.command + "'");
  return *o.seed;
}

void require_deltas_in_domain(const std::vector<double>& deltas) {
  for (double d : deltas) {
    if (!(d >= 0.0 && d < kDeltaLimit)) {
      throw ConfigError("delta " + fmt10(d) + " outside [0, 1/(2e)) = [0, " + fmt10(kDeltaLimit) + ")");
    }
  }
}

Json header(const Options& o) {
  Json config{{"command", o.command}};
  if (o.seed) config["seed"] = *o.seed;
  return Json{{"schema_version", kSchemaVersion}, {"version", QCOUNT_VERSION}, {"config", config}};
}

Outcome cmd_bound_table(const Options& o) {
  std::vector<int> dims = o.dims.empty() ? std::vector<int>{2, 4, 8} : o.dims;
  std::vector<double> deltas = o.deltas.empty() ? std::vector<double>{0.0} : o.deltas;
  for (int d : dims) {
    if (d < 1) throw ConfigError("dimensions must be positive");
  }
  require_deltas_in_domain(deltas);
  std::set<std::pair<int, double>> rows;
  for (int d : dims) {
    for (double delta : deltas) rows.insert({d, delta});
  }
  std::ostringstream csv;
  csv << "d,delta,bound_bits\n";
  for (const auto& [d, delta] : rows) {
    csv << d << ',' << fmt10(delta) << ',' << fmt10(counting_bound(static_cast<std::size_t>(d), delta))
        << '\n';
  }
  return {csv.str(), true, std::to_string(rows.size()) + " rows"};
}

Outcome cmd_verify_lemma(const Options& o) {
  const std::uint64_t seed = require_seed(o);
  std::vector<int> dims = o.dims.empty() ? std::vector<int>{2, 4, 8} : o.dims;
  std::vector<double> deltas =
      o.deltas.empty() ? std::vector<double>{0.0, 0.05, 0.1, 0.15} : o.deltas;
  for (int d : dims) {
    if (d < 1 || d > 8) throw ConfigError("dimensions must lie in [1, 8]");
  }
  if (o.instances < 1 || o.instances > 1000) throw ConfigError("--instances must lie in [1, 1000]");
  require_deltas_in_domain(deltas);

  const std::size_t threads = default_thread_count();
  Json doc = header(o);
  doc["config"]["dims"] = dims;
  doc["config"]["deltas"] = deltas;
  doc["config"]["instances"] = o.instances;
  Json cells = Json::array();
  bool all_pass = true;
  std::size_t failures = 0;
  for (int d : dims) {
    const auto du = static_cast<std::size_t>(d);
    std::vector<PureState> targets;
    for (std::size_t k = 0; k < du; ++k) targets.push_back(PureState::unit(du, k));
    for (double delta : deltas) {
      Json cell{{"d", d}, {"delta", delta}};
      bool cell_pass = true;

      auto run_instance = [&](const Channel& channel, std::uint64_t reach_seed) {
        const CountingReport report =
            verify_counting_instance(channel, targets, delta, ReachConfig{}, reach_seed, threads);
        std::vector<PureState> hit;
        std::vector<DensityOperator> witnesses;
        for (const auto& w : report.witnesses) {
          hit.push_back(targets[w.target_index]);
          witnesses.push_back(w.input);
        }
        const ProofChainReport chain = replay_proof_chain(channel, hit, witnesses, delta);
        Json j{{"counting", counting_report_to_json(report)}, {"proof_chain", proof_chain_to_json(chain)}};
        const bool ok = report.pass && chain.passes();
        j["pass"] = ok;
        return std::pair{j, ok};
      };

      auto [identity_json, identity_ok] = run_instance(Channel::identity(du), derive_seed(seed, {du, 0xfeedULL}));
      const bool tight = delta != 0.0 ||
                         std::abs(identity_json["counting"]["achieved_log2N"].get<double>() -
                                  identity_json["counting"]["bound_log2N"].get<double>()) <= 1e-12;
      identity_json["tight"] = tight;
      cell["identity"] = identity_json;
      cell_pass = cell_pass && identity_ok && tight;

      Json instances = Json::array();
      for (int i = 0; i < o.instances; ++i) {
        const auto iu = static_cast<std::uint64_t>(i);
        const std::size_t env = 1 + static_cast<std::size_t>(i) % du;
        Rng rng(derive_seed(seed, {du, iu}));
        const Channel channel = random_channel(du, du, rng, env);
        auto [j, ok] = run_instance(channel, derive_seed(seed, {du, iu, 0x7265616368ULL}));
        j["instance"] = i;
        j["env"] = env;
        instances.push_back(std::move(j));
        if (!ok) ++failures;
        cell_pass = cell_pass && ok;
      }
      cell["instances"] = std::move(instances);
      cell["pass"] = cell_pass;
      all_pass = all_pass && cell_pass;
      cells.push_back(std::move(cell));
    }
  }
  doc["cells"] = std::move(cells);
  doc["pass"] = all_pass;
  return {doc.dump(1) + "\n", all_pass,
          "cells=" + std::to_string(dims.size() * deltas.size()) + " failures=" + std::to_string(failures) +
              " pass=" + (all_pass ? "true" : "false")};
}

Outcome cmd_enumerate(const Options& o) {
  const std::uint64_t seed = require_seed(o);
  if (!o.delta) throw ConfigError("--delta is required for enumerate");
  const double delta = *o.delta;
  const double eps = o.net_epsilon.value_or(enumeration_net_config(o.n).epsilon);
  if (!(eps > 0.0 && eps <= 1.0)) throw ConfigError("--net-epsilon must lie in (0, 1]");
  if (!(delta > eps)) {
    throw ConfigError("delta " + fmt10(delta) + " must exceed net epsilon " + fmt10(eps) +
                      ": catalogs certify delta_eff = delta + epsilon");
  }
  MachineSpec spec;
  try {
    spec.family = parse_family(o.machine_family);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  spec.n = o.n;
  spec.seed = seed;
  spec.mix = o.mix;
  spec.out_n = o.out_n;
  const QuantumMachine machine = make_machine(spec);

  NetConfig net_cfg = enumeration_net_config(o.n);
  net_cfg.epsilon = eps;
  net_cfg.seed = seed;
  const StateNet net = build_net(net_cfg);
  const OutputCatalog catalog = enumerate_outputs(machine, delta, net, default_thread_count());

  Json doc = catalog_to_json(catalog);
  Json cfg = header(o)["config"];
  cfg["machine_family"] = o.machine_family;
  cfg["n"] = o.n;
  cfg["delta"] = delta;
  cfg["net_epsilon"] = eps;
  doc["version"] = QCOUNT_VERSION;
  doc["config"] = cfg;
  const double delta_eff = catalog.delta_eff();
  const bool applicable = delta_eff < kDeltaLimit;
  const double bound = applicable ? qc_counting_bound(o.n, delta_eff) : 0.0;
  const bool pass = !applicable || catalog.log2_size() <= bound + 1e-12;
  doc["summary"] = {{"count", catalog.size()},
                    {"log2_count", catalog.log2_size()},
                    {"delta_eff", delta_eff},
                    {"bound_applicable", applicable},
                    {"qc_counting_bound", applicable ? Json(bound) : Json(nullptr)},
                    {"pass", pass}};
  std::ostringstream line;
  line << "count=" << catalog.size() << " log2_count=" << fmt10(catalog.log2_size())
       << " qc_counting_bound=" << (applicable ? fmt10(bound) : std::string("n/a"))
       << " pass=" << (pass ? "true" : "false");
  return {doc.dump(1) + "\n", pass, line.str()};
}

Outcome cmd_net_check(const Options& o) {
  const std::uint64_t seed = require_seed(o);
  if (o.n < 0 || o.n > 3) throw ConfigError("--n must lie in [0, 3] for net-check");
  NetConfig cfg = default_net_config(o.n);
  if (o.net_epsilon) {
    if (!(*o.net_epsilon > 0.0 && *o.net_epsilon <= 1.0)) throw ConfigError("--net-epsilon must lie in (0, 1]");
    cfg.epsilon = *o.net_epsilon;
  }
  cfg.seed = seed;
  cfg.certify = false;
  const StateNet net = build_net(cfg);
  const CoverReport report =
      covering_certificate(net, cfg.certificate_samples, derive_seed(seed, {0x63657274ULL, static_cast<std::uint64_t>(o.n)}));
  Json doc = header(o);
  doc["config"]["n"] = o.n;
  doc["config"]["net_epsilon"] = cfg.epsilon;
  doc["net"] = {{"size", net.points.size()}, {"fingerprint", net.fingerprint}, {"epsilon", net.epsilon}};
  doc["certificate"] = cover_report_to_json(report);
  doc["pass"] = report.passed();
  std::ostringstream line;
  line << "net_size=" << net.points.size() << " violations=" << report.violations << "/" << report.samples
       << " worst=" << fmt10(report.worst_distance) << " pass=" << (report.passed() ? "true" : "false");
  return {doc.dump(1) + "\n", report.passed(), line.str()};
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

Outcome cmd_complexity_scan(const Options& o) {
  if (o.lmax < 1 || o.lmax > 20) throw ConfigError("--lmax must lie in [1, 20]");
  for (const auto& t : o.targets) {
    if (t.find_first_not_of("01") != std::string::npos) throw ConfigError("targets must be binary strings");
  }
  std::vector<std::string> xs;
  const StringBasis all(4);
  for (std::size_t i = 0; i < all.dim(); ++i) xs.push_back(all.string_at(i));
  for (const auto& t : o.targets) {
    if (t.size() > 4) xs.push_back(t);
  }
  const auto table = complexity_table(o.lmax);
  std::ostringstream csv;
  csv << "x,complexity\n";
  for (const auto& x : xs) {
    auto it = table.find(x);
    csv << csv_quote(x) << ',' << (it == table.end() ? std::string("none") : std::to_string(it->second)) << '\n';
  }
  return {csv.str(), true, std::to_string(xs.size()) + " rows, lmax=" + std::to_string(o.lmax)};
}

void write_atomically(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << text;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  fs::rename(tmp, target);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"qcount: counting-bound experiments on toy quantum machines"};
  app.set_version_flag("--version", std::string(QCOUNT_VERSION));
  app.add_option("--command", o.command, "bound-table | verify-lemma | enumerate | net-check | complexity-scan")
      ->required()
      ->check(CLI::IsMember({"bound-table", "verify-lemma", "enumerate", "net-check", "complexity-scan"}));
  app.add_option("--seed", o.seed, "Base seed (required for randomized commands)");
  app.add_option("--out", o.out, "Output path, '-' for stdout");
  app.add_option("--dims", o.dims, "Dimensions (bound-table, verify-lemma)")->delimiter(',');
  app.add_option("--deltas", o.deltas, "Tolerances (bound-table, verify-lemma)")->delimiter(',');
  app.add_option("--machine-family", o.machine_family,
                 "identity | basis-permutation | seeded-random-unitary | dephasing-compose");
  app.add_option("--n", o.n, "Input length bound");
  app.add_option("--out-n", o.out_n, "Output length bound (default n)");
  app.add_option("--mix", o.mix, "dephasing-compose weight of the maximally mixed output");
  app.add_option("--delta", o.delta, "Tolerance (enumerate)");
  app.add_option("--net-epsilon", o.net_epsilon, "Net covering radius");
  app.add_option("--instances", o.instances, "Random channels per cell (verify-lemma)");
  app.add_option("--lmax", o.lmax, "Maximum program length (complexity-scan)");
  app.add_option("--targets", o.targets, "Extra strings (complexity-scan)")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  try {
    Outcome out;
    if (o.command == "bound-table") out = cmd_bound_table(o);
    else if (o.command == "verify-lemma") out = cmd_verify_lemma(o);
    else if (o.command == "enumerate") out = cmd_enumerate(o);
    else if (o.command == "net-check") out = cmd_net_check(o);
    else out = cmd_complexity_scan(o);
    write_atomically(o.out, out.text);
    std::cerr << o.command << ": " << out.summary << '\n';
    return out.pass ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
