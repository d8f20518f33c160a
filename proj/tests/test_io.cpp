#include <doctest.h>

#include <json.hpp>

#include "hoqt/error.hpp"
#include "hoqt/io.hpp"
#include "support.hpp"

using namespace hoqt;
using support::parse;

TEST_CASE("serialize then deserialize is exact") {
  support::Rng rng(1);
  const auto reg = make_registry(SystemRegistry::from_inline("A=2,B=3,Q1=2"));
  for (const char* s : {"I", "A", "AQ1", "A->B", "(A->B)->Q1"}) {
    TypedMap m = support::random_map(rng, parse_type(s, *reg), reg);
    Matrix a = m.matrix();
    a(0, 0) = Complex(0.1, -1e-300);
    a(a.rows() - 1, a.cols() - 1) = Complex(1.0 / 3.0, 6.02214076e23);
    m = TypedMap(m.type(), reg, a);
    const TypedMap back = deserialize_map(serialize_map(m));
    CHECK(back.type() == m.type());
    CHECK(back.registry() == m.registry());
    CHECK(back.matrix() == m.matrix());
    CHECK(serialize_map(back) == serialize_map(m));
  }
}

TEST_CASE("map document layout") {
  const auto reg = support::qubits("A");
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = Complex(0.5, -2.0);
  const auto doc = nlohmann::json::parse(serialize_map(TypedMap(parse("A"), reg, a)));
  CHECK(doc["format_version"] == 1);
  CHECK(doc["type"] == "A");
  CHECK(doc["dims"]["A"] == 2);
  CHECK(doc["convention"] == "rowmajor-v1");
  CHECK(doc["matrix"][0][1][0] == 0.5);
  CHECK(doc["matrix"][0][1][1] == -2.0);
}

TEST_CASE("malformed map documents are format errors") {
  const std::string good =
      R"({"format_version":1,"type":"A","dims":{"A":2},"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]],"convention":"rowmajor-v1"})";
  CHECK_NOTHROW(deserialize_map(good));
  auto broken = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  CHECK_THROWS_AS(deserialize_map("{not json"), FormatError);
  CHECK_THROWS_AS(deserialize_map("[1,2]"), FormatError);
  CHECK_THROWS_AS(deserialize_map(broken("\"format_version\":1", "\"format_version\":2")), FormatError);
  CHECK_THROWS_AS(deserialize_map(broken("rowmajor-v1", "colmajor")), FormatError);
  CHECK_THROWS_AS(deserialize_map(broken("\"type\":\"A\"", "\"type\":\"B\"")), FormatError);
  CHECK_THROWS_AS(deserialize_map(broken("\"type\":\"A\"", "\"type\":\"A->\"")), FormatError);
  CHECK_THROWS_AS(deserialize_map(broken("\"type\":\"A\"", "\"type\":\"A->A\"")), FormatError);
  CHECK_THROWS_AS(deserialize_map(broken("[[1,0],[0,0]]", "[[1,0]]")), FormatError);
  CHECK_THROWS_AS(deserialize_map(broken("[1,0],[0,0]]", "[\"x\",0],[0,0]]")), FormatError);
  CHECK_THROWS_AS(deserialize_map(broken("{\"A\":2}", "{\"A\":0}")), FormatError);
  CHECK_THROWS_AS(deserialize_map(broken(",\"dims\":{\"A\":2}", "")), FormatError);
}

TEST_CASE("verdict report") {
  ConeVerdict v;
  v.decision = Decision::non_member;
  v.method = Method::definitional;
  v.tolerance = 1e-9;
  v.min_eigenvalue = -0.5;
  Witness w;
  w.probe_type = "Z->Y";
  w.probe_seed = 42;
  w.spectrum = {-0.5};
  v.witness = w;
  v.probes_used = 3;
  const auto doc = nlohmann::json::parse(verdict_to_json(v));
  CHECK(doc["decision"] == "non_member");
  CHECK(doc["method"] == "definitional");
  CHECK(doc["tolerance"] == 1e-9);
  CHECK(doc["min_eigenvalue"] == -0.5);
  CHECK(doc["witness"]["probe_type"] == "Z->Y");
  CHECK(doc["witness"]["probe_seed"] == 42);
  CHECK(doc["probes_used"] == 3);

  ConeVerdict member;
  member.decision = Decision::member;
  member.tolerance = 1e-9;
  const auto plain = nlohmann::json::parse(verdict_to_json(member));
  CHECK(plain["method"] == "choi");
  CHECK_FALSE(plain.contains("witness"));
}
