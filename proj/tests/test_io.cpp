#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include <json.hpp>

#include "dphase/config.hpp"
#include "dphase/errors.hpp"
#include "dphase/io.hpp"
#include "dphase/kernel.hpp"
#include "dphase/random.hpp"
#include "dphase/space.hpp"
#include "dphase/verify.hpp"

using namespace dphase;

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, -0.0}) {
    CHECK(std::stod(io::format_double(x)) == x);
  }
  CHECK(io::format_double(0.2) == "0.2");
}

TEST_CASE("operator files round-trip exactly") {
  std::mt19937_64 rng(1);
  const Operator op = random_ginibre(5, rng);
  const std::string text = io::write_operator_json({op, "g", false});
  const io::OperatorFile back = io::parse_operator_json(text);
  CHECK(back.op == op);
  CHECK(back.name == "g");
  REQUIRE(back.hermitian.has_value());
  CHECK(*back.hermitian == false);

  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["dim"] == 5);
  CHECK(doc["entries"].size() == 25);
  CHECK(doc["entries"][1][0].get<double>() == op(0, 1).real());  // row-major
  CHECK(doc["entries"][1][1].get<double>() == op(0, 1).imag());
}

TEST_CASE("ket files round-trip and are told apart from operators") {
  std::mt19937_64 rng(2);
  Ket k = random_ginibre(7, rng).col(0);
  const auto parsed = io::parse_state_json(io::write_ket_json({k, "psi"}));
  REQUIRE(std::holds_alternative<io::KetFile>(parsed));
  CHECK(std::get<io::KetFile>(parsed).ket == k);
  const auto op = io::parse_state_json(io::write_operator_json({Operator::Identity(3, 3), "", std::nullopt}));
  CHECK(std::holds_alternative<io::OperatorFile>(op));
}

TEST_CASE("malformed state files are parse errors") {
  CHECK_THROWS_AS(io::parse_operator_json("not json"), ParseError);
  CHECK_THROWS_AS(io::parse_operator_json("[1,2]"), ParseError);
  CHECK_THROWS_AS(io::parse_operator_json(R"({"entries": []})"), ParseError);
  CHECK_THROWS_AS(io::parse_operator_json(R"({"dim": 2, "entries": [[1,0],[0,0],[0,0],[1,0]]})"), ParseError);
  CHECK_THROWS_AS(io::parse_operator_json(R"({"dim": 1, "entries": [[1,0],[0,0]]})"), ParseError);
  CHECK_THROWS_AS(io::parse_operator_json(R"({"dim": 1, "entries": ["1+0i"]})"), ParseError);
  CHECK_THROWS_AS(io::parse_operator_json(R"({"dim": 1, "entries": [[1,0,0]]})"), ParseError);
  CHECK_THROWS_AS(io::parse_operator_json(R"({"dim": 1, "entries": [[1,0]], "hermitian": "yes"})"), ParseError);
  CHECK_THROWS_AS(io::parse_state_json(R"({"dim": 3, "ket": [[1,0]]})"), ParseError);
  CHECK_NOTHROW(io::parse_operator_json(R"({"dim": 1, "entries": [[1,0]]})"));
}

TEST_CASE("grid files round-trip and keep mu-major order") {
  std::mt19937_64 rng(3);
  const SpaceContext ctx = make_space(5);
  const PhaseGrid g = map_operator(ctx, random_hermitian(5, rng), Complex(0.4, 0.3));
  const std::string csv = io::write_grid_csv(io::to_grid_file(g));
  CHECK(csv.rfind("# N=5 s=0.4,0.3 dist=s-ordered\nmu,nu,re,im\n-2,-2,", 0) == 0);
  CHECK(csv.find("\n-2,-1,") < csv.find("\n-1,-2,"));
  const io::GridFile back = io::parse_grid_csv(csv);
  CHECK(back.n == 5);
  CHECK(back.s == Complex(0.4, 0.3));
  CHECK(back.dist == "s-ordered");
  CHECK(back.values == g.values);
  CHECK(io::write_grid_csv(back) == csv);
}

TEST_CASE("grid rows may appear in any order") {
  const std::string csv = "# N=3 s=0,0 dist=wigner\nmu,nu,re,im\n"
                          "1,1,9,0\n1,0,8,0\n1,-1,7,0\n0,1,6,0\n0,0,5,0\n0,-1,4,0\n-1,1,3,0\n-1,0,2,0\n-1,-1,1,0\n";
  const io::GridFile g = io::parse_grid_csv(csv);
  CHECK(g.values(0, 0) == Complex(1.0));
  CHECK(g.values(2, 2) == Complex(9.0));
}

TEST_CASE("malformed grid files are parse errors") {
  const std::string head = "# N=3 s=0,0 dist=wigner\nmu,nu,re,im\n";
  std::string rows;
  for (int m = -1; m <= 1; ++m) {
    for (int v = -1; v <= 1; ++v) rows += std::to_string(m) + "," + std::to_string(v) + ",1,0\n";
  }
  CHECK_NOTHROW(io::parse_grid_csv(head + rows));
  CHECK_THROWS_AS(io::parse_grid_csv(rows), ParseError);
  CHECK_THROWS_AS(io::parse_grid_csv("# s=0,0 dist=w\nmu,nu,re,im\n" + rows), ParseError);
  CHECK_THROWS_AS(io::parse_grid_csv("# N=4 s=0,0 dist=w\nmu,nu,re,im\n" + rows), ParseError);
  CHECK_THROWS_AS(io::parse_grid_csv(head + rows.substr(0, rows.size() - 8)), ParseError);
  CHECK_THROWS_AS(io::parse_grid_csv(head + rows + "0,0,1,0\n"), ParseError);
  CHECK_THROWS_AS(io::parse_grid_csv(head + rows + "2,0,1,0\n"), ParseError);
  CHECK_THROWS_AS(io::parse_grid_csv(head + "0,0,x,0\n"), ParseError);
}

TEST_CASE("tolerance configuration") {
  const Tolerances def;
  CHECK(def.get("kernel_duality") == 1e-10);
  CHECK(def.get("roundtrip") == 1e-9);
  const Tolerances t = Tolerances::from_json(R"({"tolerances": {"roundtrip": 1e-6}})");
  CHECK(t.get("roundtrip") == 1e-6);
  CHECK(t.get("hierarchy") == 1e-10);
  CHECK(Tolerances::from_json("{}").all() == def.all());
  CHECK_THROWS_AS(Tolerances::from_json(R"({"tolerances": {"nope": 1}})"), ParseError);
  CHECK_THROWS_AS(Tolerances::from_json(R"({"tolerances": {"roundtrip": -1}})"), ParseError);
  CHECK_THROWS_AS(Tolerances::from_json(R"({"tolerances": {"roundtrip": "small"}})"), ParseError);
  CHECK_THROWS_AS(Tolerances::from_json("[]"), ParseError);

  const auto path = std::filesystem::temp_directory_path() / "dphase_test_config.json";
  io::write_text(path.string(), R"({"tolerances": {"fold3": 0.5}})");
  CHECK(Tolerances::load(path.string()).get("fold3") == 0.5);
  ::setenv("DPHASE_CONFIG", path.string().c_str(), 1);
  CHECK(Tolerances::load(std::nullopt).get("fold3") == 0.5);
  ::unsetenv("DPHASE_CONFIG");
  CHECK(Tolerances::load(std::nullopt).get("fold3") == 1e-9);
  std::filesystem::remove(path);
}

TEST_CASE("verification report") {
  const VerificationReport r = run_verification(5, {Complex(-1.0), Complex(0.0), Complex(0.4, 0.3)}, Tolerances{});
  CHECK(r.passed());
  CHECK(r.conditioning.size() == 3);
  const auto doc = nlohmann::json::parse(r.to_json());
  CHECK(doc["passed"] == true);
  CHECK(doc["N"] == 5);
  CHECK(doc["checks"].size() == r.checks.size());
  CHECK(r.to_text().find("all checks passed") != std::string::npos);

  // A tolerance tightened below roundoff makes the report fail.
  Tolerances strict;
  strict.set("kernel_duality", 1e-300);
  CHECK_FALSE(run_verification(3, {Complex(0.5)}, strict).passed());

  CHECK_THROWS_AS(run_verification(4, {}, Tolerances{}), DomainError);
  CHECK_THROWS_AS(run_verification(23, {}, Tolerances{}), DomainError);
  CHECK_THROWS_AS(run_verification(3, {Complex(2.0)}, Tolerances{}), DomainError);
}
