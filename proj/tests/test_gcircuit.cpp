#include <doctest.h>

#include <cmath>
#include <random>

#include "ppadforge/gcircuit.hpp"

using namespace ppadforge;

namespace {

Gate mk(GateType t, std::vector<std::string> in, std::string out,
        std::optional<double> zeta = std::nullopt) {
  return Gate{t, zeta, std::move(in), std::move(out)};
}

// Row-by-row re-implementation of the constraint table, kept deliberately
// separate from the library code path. Test oracle only.
bool oracle_row(const Gate& g, const Assignment& a, double eps) {
  auto val = [&](const std::string& id) { return a.at(id); };
  double out = val(g.output);
  switch (g.kind) {
    case GateType::Const:
      return out >= *g.zeta - eps && out <= *g.zeta + eps;
    case GateType::Mulz: {
      double t = *g.zeta * val(g.inputs[0]);
      return out >= t - eps && out <= t + eps;
    }
    case GateType::Copy: {
      double t = val(g.inputs[0]);
      return out >= t - eps && out <= t + eps;
    }
    case GateType::Add: {
      double t = val(g.inputs[0]) + val(g.inputs[1]);
      if (t > 1.0) t = 1.0;
      return out >= t - eps && out <= t + eps;
    }
    case GateType::Sub: {
      double t = val(g.inputs[0]) - val(g.inputs[1]);
      if (t < 0.0) t = 0.0;
      return out >= t - eps && out <= t + eps;
    }
    case GateType::Less: {
      double x = val(g.inputs[0]), y = val(g.inputs[1]);
      if (x < y - eps && !(out >= 1.0 - eps)) return false;
      if (x > y + eps && !(out <= eps)) return false;
      return true;
    }
    case GateType::Or: {
      double x = val(g.inputs[0]), y = val(g.inputs[1]);
      bool one = x >= 1.0 - eps || y >= 1.0 - eps;
      bool zero = x <= eps && y <= eps;
      if (one && !(out >= 1.0 - eps)) return false;
      if (zero && !(out <= eps)) return false;
      return true;
    }
    case GateType::And: {
      double x = val(g.inputs[0]), y = val(g.inputs[1]);
      bool one = x >= 1.0 - eps && y >= 1.0 - eps;
      bool zero = x <= eps || y <= eps;
      if (one && !(out >= 1.0 - eps)) return false;
      if (zero && !(out <= eps)) return false;
      return true;
    }
    case GateType::Not: {
      double x = val(g.inputs[0]);
      if (x <= eps && !(out >= 1.0 - eps)) return false;
      if (x >= 1.0 - eps && !(out <= eps)) return false;
      return true;
    }
  }
  return false;
}

GeneralizedCircuit not_cycle() {
  GeneralizedCircuit c;
  c.nodes = {"a", "b"};
  c.gates = {mk(GateType::Not, {"a"}, "b"), mk(GateType::Not, {"b"}, "a")};
  return c;
}

}  // namespace

TEST_CASE("validate_circuit catches each structural violation") {
  GeneralizedCircuit c;
  c.nodes = {"a"};
  c.gates = {mk(GateType::Const, {}, "a", 0.5)};
  CHECK(validate_circuit(c).empty());

  GeneralizedCircuit dup;
  dup.nodes = {"a", "b"};
  dup.gates = {mk(GateType::Copy, {"b"}, "a"), mk(GateType::Not, {"b"}, "a")};
  auto errs = validate_circuit(dup);
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].gate_index == 1);
  CHECK(errs[0].message.find("duplicate output") != std::string::npos);

  GeneralizedCircuit bad_arity;
  bad_arity.nodes = {"a", "b"};
  bad_arity.gates = {mk(GateType::Add, {"a"}, "b")};
  errs = validate_circuit(bad_arity);
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].message.find("arity") != std::string::npos);

  GeneralizedCircuit unknown;
  unknown.nodes = {"a"};
  unknown.gates = {mk(GateType::Copy, {"zz"}, "a")};
  CHECK(validate_circuit(unknown).size() == 1);

  GeneralizedCircuit zeta_missing;
  zeta_missing.nodes = {"a"};
  zeta_missing.gates = {mk(GateType::Const, {}, "a")};
  CHECK(validate_circuit(zeta_missing).size() == 1);
}

TEST_CASE("gate_satisfied matches the documented rows") {
  Assignment a{{"a", 1.0}, {"b", 0.5}};
  CHECK(gate_satisfied(mk(GateType::Mulz, {"a"}, "b", 0.5), a, 0.01));

  Assignment dead{{"a", 0.30}, {"b", 0.31}, {"c", 0.77}};
  CHECK(gate_satisfied(mk(GateType::Less, {"a", "b"}, "c"), dead, 0.05));

  Assignment clip{{"a", 0.8}, {"b", 0.7}, {"c", 1.0}};
  CHECK(gate_satisfied(mk(GateType::Add, {"a", "b"}, "c"), clip, 0.05));

  Assignment missing{{"a", 0.5}};
  CHECK_THROWS_AS(
      gate_satisfied(mk(GateType::Copy, {"zz"}, "a"), missing, 0.1),
      InputError);
}

TEST_CASE("violated_fraction counts gates") {
  GeneralizedCircuit c;
  c.nodes = {"a", "b"};
  c.gates = {mk(GateType::Const, {}, "a", 0.2),
             mk(GateType::Const, {}, "b", 0.9)};
  Assignment a{{"a", 0.2}, {"b", 0.0}};
  CHECK(violated_fraction(c, a, 0.05) == doctest::Approx(0.5));
  CHECK(is_satisfied(c, a, {0.05, 0.6}));
  CHECK_FALSE(is_satisfied(c, a, {0.05, 0.4}));

  Assignment mid{{"a", 0.5}, {"b", 0.5}};
  CHECK(violated_fraction(not_cycle(), mid, 0.1) == 0.0);

  GeneralizedCircuit empty;
  empty.nodes = {"a"};
  CHECK_THROWS_AS(violated_fraction(empty, a, 0.1), InputError);
}

TEST_CASE("ideal_gate_value centers") {
  Assignment a{{"a", 0.3}, {"b", 0.7}, {"c", 0.0}};
  CHECK(ideal_gate_value(mk(GateType::Sub, {"a", "b"}, "c"), a) == 0.0);
  Assignment l{{"a", 0.2}, {"b", 0.9}, {"c", 0.0}};
  CHECK(ideal_gate_value(mk(GateType::Less, {"a", "b"}, "c"), l) == 1.0);
  Assignment m{{"a", 0.5}, {"b", 0.0}};
  CHECK(ideal_gate_value(mk(GateType::Mulz, {"a"}, "b", 3.0), m) == 1.0);
  // boolean rounding: ties go down, NOT(0.5) = 1
  CHECK(ideal_gate_value(mk(GateType::Not, {"a"}, "b"), m) == 1.0);
  CHECK(ideal_gate_value(mk(GateType::Or, {"a", "b"}, "c"), l) == 1.0);
}

TEST_CASE("iterate_fixed_point sweeps in gate order") {
  GeneralizedCircuit chain;
  chain.nodes = {"a"};
  chain.gates = {mk(GateType::Const, {}, "a", 0.3)};
  auto r = iterate_fixed_point(chain, {{"a", 0.9}}, 1);
  CHECK(r.at("a") == 0.3);

  GeneralizedCircuit copies;
  copies.nodes = {"a", "b"};
  copies.gates = {mk(GateType::Copy, {"a"}, "b"),
                  mk(GateType::Copy, {"b"}, "a")};
  r = iterate_fixed_point(copies, {{"a", 0.4}, {"b", 0.4}}, 7);
  CHECK(r.at("a") == 0.4);
  CHECK(r.at("b") == 0.4);

  r = iterate_fixed_point(not_cycle(), {{"a", 0.0}, {"b", 0.0}}, 2);
  CHECK(r.at("a") == 0.0);
}

TEST_CASE("brute_force_search walks the grid lexicographically") {
  GeneralizedCircuit c;
  c.nodes = {"a"};
  c.gates = {mk(GateType::Const, {}, "a", 0.3)};
  auto hit = brute_force_search(c, 10, {0.06, 0.0});
  REQUIRE(hit);
  CHECK(hit->at("a") == doctest::Approx(0.3));

  c.gates = {mk(GateType::Const, {}, "a", 0.33)};
  CHECK_FALSE(brute_force_search(c, 10, {0.02, 0.0}));

  auto nc = brute_force_search(not_cycle(), 2, {0.1, 0.0});
  REQUIRE(nc);
  CHECK(nc->at("a") == 0.5);
  CHECK(nc->at("b") == 0.5);

  GeneralizedCircuit big;
  for (int i = 0; i < 30; ++i) big.nodes.push_back("n" + std::to_string(i));
  big.gates = {mk(GateType::Const, {}, "n0", 0.5)};
  CHECK_THROWS_AS(brute_force_search(big, 10, {0.1, 0.0}), BudgetError);
}

TEST_CASE("max_fanout counts input slots") {
  GeneralizedCircuit c;
  c.nodes = {"a", "b", "x", "y", "z"};
  c.gates = {mk(GateType::And, {"a", "b"}, "x"),
             mk(GateType::And, {"a", "b"}, "y"),
             mk(GateType::And, {"a", "b"}, "z")};
  CHECK(max_fanout(c) == 3);

  GeneralizedCircuit single;
  single.nodes = {"a"};
  single.gates = {mk(GateType::Const, {}, "a", 0.1)};
  CHECK(max_fanout(single) == 0);
}

TEST_CASE("gate_satisfied is monotone in eps and matches the row oracle") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const GateType kinds[] = {GateType::Const, GateType::Mulz, GateType::Copy,
                            GateType::Add,   GateType::Sub,  GateType::Less,
                            GateType::Or,    GateType::And,  GateType::Not};
  for (int trial = 0; trial < 400; ++trial) {
    GateType t = kinds[rng() % 9];
    Gate g;
    g.kind = t;
    if (gate_has_zeta(t)) g.zeta = unif(rng);
    for (int i = 0; i < gate_arity(t); ++i)
      g.inputs.push_back(i == 0 ? "a" : "b");
    g.output = "c";
    Assignment a{{"a", unif(rng)}, {"b", unif(rng)}, {"c", unif(rng)}};
    double e1 = unif(rng) * 0.5, e2 = e1 + unif(rng) * 0.5;
    CHECK(gate_satisfied(g, a, e1) == oracle_row(g, a, e1));
    if (gate_satisfied(g, a, e1)) CHECK(gate_satisfied(g, a, e2));
  }
}

TEST_CASE("LESS dead band imposes nothing on the output") {
  for (int j = 0; j <= 20; ++j) {
    Assignment a{{"a", 0.42}, {"b", 0.44}, {"c", j / 20.0}};
    CHECK(gate_satisfied(mk(GateType::Less, {"a", "b"}, "c"), a, 0.05));
  }
}

TEST_CASE("forward evaluation of a DAG yields exact satisfaction") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    GeneralizedCircuit c;
    int frees = 2;
    for (int i = 0; i < frees; ++i) c.nodes.push_back("f" + std::to_string(i));
    int gates = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < gates; ++i) {
      GateType t = static_cast<GateType>(rng() % 9);
      std::string out = "g" + std::to_string(i);
      Gate g;
      g.kind = t;
      if (gate_has_zeta(t)) g.zeta = unif(rng);
      for (int s = 0; s < gate_arity(t); ++s)
        g.inputs.push_back(c.nodes[rng() % c.nodes.size()]);
      g.output = out;
      c.nodes.push_back(out);
      c.gates.push_back(std::move(g));
    }
    REQUIRE(validate_circuit(c).empty());
    Assignment init;
    for (int i = 0; i < frees; ++i) init["f" + std::to_string(i)] = unif(rng);
    Assignment fp = iterate_fixed_point(c, init, 1);
    CHECK(violated_fraction(c, fp, 1e-12) == 0.0);
  }
}

TEST_CASE("identical inputs give identical outputs") {
  auto r1 = brute_force_search(not_cycle(), 4, {0.3, 0.0});
  auto r2 = brute_force_search(not_cycle(), 4, {0.3, 0.0});
  REQUIRE(r1);
  REQUIRE(r2);
  CHECK(*r1 == *r2);
}
