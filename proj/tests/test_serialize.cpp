#include <doctest.h>

#include "qcount/errors.hpp"
#include "qcount/random.hpp"
#include "qcount/serialize.hpp"

using namespace qcount;

TEST_CASE("matrix and density round trip") {
  Rng rng(1);
  const auto rho = random_density(3, rng, 0, StringBasis(1));
  const Json j = density_to_json(rho);
  CHECK(j["n"] == 3);
  CHECK(j["re"].size() == 3);
  const auto back = density_from_json(Json::parse(j.dump()));
  CHECK(linalg::max_abs(back.matrix() - rho.matrix()) < 1e-15);
  REQUIRE(back.basis().has_value());
  CHECK(back.basis()->n() == 1);
}

TEST_CASE("malformed matrices are rejected") {
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"n":2,"re":[[1,0]],"im":[[0,0]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"n":2,"re":[[1,0],[0]],"im":[[0,0],[0,0]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"re":[[1]],"im":[[0]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"n":1,"re":[["x"]],"im":[[0]]})")), FormatError);
  CHECK_THROWS_AS(density_from_json(Json::parse(R"({"n":1,"re":[[2]],"im":[[0]]})")), TraceError);
}

TEST_CASE("channel round trip") {
  Rng rng(2);
  const Channel e = random_channel(2, 3, rng);
  const Channel back = channel_from_json(Json::parse(channel_to_json(e).dump()));
  REQUIRE(back.kraus().size() == e.kraus().size());
  for (std::size_t k = 0; k < e.kraus().size(); ++k) {
    CHECK(linalg::max_abs(back.kraus()[k] - e.kraus()[k]) < 1e-15);
  }
  Json bad = channel_to_json(e);
  bad["kraus"].erase(0);
  CHECK_THROWS_AS(channel_from_json(bad), InvalidChannelError);
}

TEST_CASE("machine spec round trip") {
  MachineSpec s;
  s.family = MachineFamily::kDephasingCompose;
  s.n = 2;
  s.seed = 99;
  s.mix = 0.25;
  s.out_n = 3;
  s.ancilla_count = 4;
  const Json j = machine_spec_to_json(s);
  CHECK(j["family"] == "dephasing-compose");
  CHECK(machine_spec_from_json(j) == s);
  CHECK_THROWS_AS(machine_spec_from_json(Json::parse(R"({"family":"x","n":1,"seed":0})")), DomainError);
  const auto minimal = machine_spec_from_json(Json::parse(R"({"family":"identity","n":1,"seed":3})"));
  CHECK(minimal.ancilla_count == 0);
}

TEST_CASE("catalog round trip is byte stable") {
  OutputCatalog c;
  c.machine.n = 1;
  c.machine.out_n = 1;
  c.n = 1;
  c.delta = 0.125;
  c.net_epsilon = 0.02;
  c.net_size = 10;
  c.net_fingerprint = "abc";
  c.entries = {{"", 0, 0.0}, {"1", 4, 0.0625}};
  const Json j = catalog_to_json(c);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["count"] == 2);
  const auto back = catalog_from_json(Json::parse(j.dump()));
  CHECK(catalog_to_json(back).dump() == j.dump());
}

TEST_CASE("reports serialize every field") {
  CountingReport r;
  r.d = 2;
  r.delta = 0.1;
  r.pass = true;
  const Json j = counting_report_to_json(r);
  for (const char* k : {"d", "delta", "targets", "achieved", "achieved_log2N", "bound_log2N", "witnesses", "pass"}) {
    CHECK(j.contains(k));
  }
  ProofChainReport p;
  const Json pj = proof_chain_to_json(p);
  for (const char* k : {"step_a", "step_b", "step_c", "fannes_steps", "step_d", "pass"}) CHECK(pj.contains(k));
  CoverReport cr;
  cr.worst_distance = std::numeric_limits<double>::infinity();
  CHECK(cover_report_to_json(cr)["worst_distance"].is_null());
}
