#include "qcount/serialize.hpp"

#include <cmath>

#include "qcount/errors.hpp"

namespace qcount {

namespace {

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field \"") + key + "\": " + e.what());
  }
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("only square matrices are serialized");
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return Json{{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j) {
  const auto n = get<long long>(j, "n");
  if (n < 1) throw FormatError("matrix size must be positive");
  const auto re = get<std::vector<std::vector<double>>>(j, "re");
  const auto im = get<std::vector<std::vector<double>>>(j, "im");
  const auto size = static_cast<std::size_t>(n);
  if (re.size() != size || im.size() != size) throw FormatError("matrix row count does not match n");
  Matrix m(n, n);
  for (std::size_t r = 0; r < size; ++r) {
    if (re[r].size() != size || im[r].size() != size) {
      throw FormatError("matrix row " + std::to_string(r) + " has the wrong length");
    }
    for (std::size_t c = 0; c < size; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(re[r][c], im[r][c]);
    }
  }
  return m;
}

Json density_to_json(const DensityOperator& rho) {
  Json j = matrix_to_json(rho.matrix());
  if (rho.basis()) j["basis_n"] = rho.basis()->n();
  return j;
}

DensityOperator density_from_json(const Json& j) {
  const Matrix m = matrix_from_json(j);
  std::optional<StringBasis> basis;
  if (j.contains("basis_n")) basis = StringBasis(get<int>(j, "basis_n"));
  return make_density(m, basis);
}

Json channel_to_json(const Channel& channel) {
  Json kraus = Json::array();
  for (const Matrix& k : channel.kraus()) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < k.rows(); ++r) {
      Json rr = Json::array();
      Json ir = Json::array();
      for (Eigen::Index c = 0; c < k.cols(); ++c) {
        rr.push_back(k(r, c).real());
        ir.push_back(k(r, c).imag());
      }
      re.push_back(std::move(rr));
      im.push_back(std::move(ir));
    }
    kraus.push_back(Json{{"re", std::move(re)}, {"im", std::move(im)}});
  }
  return Json{{"in_dim", channel.in_dim()}, {"out_dim", channel.out_dim()}, {"kraus", std::move(kraus)}};
}

Channel channel_from_json(const Json& j) {
  const auto in = get<std::size_t>(j, "in_dim");
  const auto out = get<std::size_t>(j, "out_dim");
  if (!j.at("kraus").is_array()) throw FormatError("\"kraus\" must be an array");
  std::vector<Matrix> ops;
  for (const Json& k : j.at("kraus")) {
    const auto re = get<std::vector<std::vector<double>>>(k, "re");
    const auto im = get<std::vector<std::vector<double>>>(k, "im");
    if (re.size() != out || im.size() != out) throw FormatError("Kraus operator must have out_dim rows");
    Matrix m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
    for (std::size_t r = 0; r < out; ++r) {
      if (re[r].size() != in || im[r].size() != in) throw FormatError("Kraus operator must have in_dim columns");
      for (std::size_t c = 0; c < in; ++c) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(re[r][c], im[r][c]);
      }
    }
    ops.push_back(std::move(m));
  }
  return Channel::make(std::move(ops));
}

Json machine_spec_to_json(const MachineSpec& spec) {
  return Json{{"family", to_string(spec.family)},
              {"n", spec.n},
              {"out_n", spec.out_n < 0 ? spec.n : spec.out_n},
              {"seed", spec.seed},
              {"ancilla_count", spec.ancilla_count},
              {"mix", spec.mix}};
}

MachineSpec machine_spec_from_json(const Json& j) {
  MachineSpec spec;
  spec.family = parse_family(get<std::string>(j, "family"));
  spec.n = get<int>(j, "n");
  spec.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("ancilla_count")) spec.ancilla_count = get<int>(j, "ancilla_count");
  if (j.contains("out_n")) spec.out_n = get<int>(j, "out_n");
  if (j.contains("mix")) spec.mix = get<double>(j, "mix");
  return spec;
}

Json counting_report_to_json(const CountingReport& report, bool include_witnesses) {
  Json j{{"d", report.d},
         {"delta", report.delta},
         {"targets", report.targets},
         {"achieved", report.achieved},
         {"achieved_log2N", report.achieved_log2N},
         {"bound_log2N", report.bound_log2N},
         {"pass", report.pass}};
  Json w = Json::array();
  for (const auto& wit : report.witnesses) {
    Json e{{"target_index", wit.target_index}, {"distance", wit.distance}};
    if (include_witnesses) e["input"] = density_to_json(wit.input);
    w.push_back(std::move(e));
  }
  j["witnesses"] = std::move(w);
  return j;
}

Json proof_chain_to_json(const ProofChainReport& r) {
  return Json{{"n", r.n},
              {"d", r.d},
              {"delta", r.delta},
              {"step_a", {{"chi_output", r.chi_output}, {"chi_input", r.chi_input},
                          {"log2_d", r.log2_d}, {"pass", r.step_a}}},
              {"step_b", {{"max_pinched_distance", r.max_pinched_distance}, {"pass", r.step_b}}},
              {"step_c", {{"average_distance", r.average_distance}, {"pass", r.step_c}}},
              {"fannes_steps", {{"max_output_entropy", r.max_output_entropy},
                                {"average_entropy_gap", r.average_entropy_gap},
                                {"fannes_term", r.fannes_term},
                                {"pass", r.fannes_steps}}},
              {"step_d", {{"log2_n", r.log2_n}, {"bound", r.bound}, {"pass", r.step_d}}},
              {"pass", r.passes()}};
}

Json cover_report_to_json(const CoverReport& r) {
  Json j{{"samples", r.samples},
         {"violations", r.violations},
         {"worst_distance", finite_or_null(r.worst_distance)},
         {"pass", r.passed()}};
  if (r.worst_sample) j["worst_sample"] = density_to_json(*r.worst_sample);
  return j;
}

Json catalog_to_json(const OutputCatalog& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries) {
    entries.push_back(Json{{"x", e.x}, {"net_index", e.net_index}, {"distance", e.distance}});
  }
  const auto term = c.index_length_term();
  return Json{{"schema_version", kSchemaVersion},
              {"machine", machine_spec_to_json(c.machine)},
              {"n", c.n},
              {"delta", c.delta},
              {"net", {{"epsilon", c.net_epsilon},
                       {"certified", c.net_certified},
                       {"size", c.net_size},
                       {"fingerprint", c.net_fingerprint}}},
              {"delta_eff", c.delta_eff()},
              {"index_length_term", term ? Json(*term) : Json(nullptr)},
              {"count", c.size()},
              {"entries", std::move(entries)}};
}

OutputCatalog catalog_from_json(const Json& j) {
  if (get<int>(j, "schema_version") != kSchemaVersion) throw FormatError("unsupported schema_version");
  OutputCatalog c;
  c.machine = machine_spec_from_json(j.at("machine"));
  c.n = get<int>(j, "n");
  c.delta = get<double>(j, "delta");
  const Json& net = j.at("net");
  c.net_epsilon = get<double>(net, "epsilon");
  c.net_certified = get<bool>(net, "certified");
  c.net_size = get<std::size_t>(net, "size");
  c.net_fingerprint = get<std::string>(net, "fingerprint");
  for (const Json& e : j.at("entries")) {
    c.entries.push_back({get<std::string>(e, "x"), get<std::size_t>(e, "net_index"),
                         get<double>(e, "distance")});
  }
  return c;
}

}  // namespace qcount
