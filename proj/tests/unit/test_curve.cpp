#include "gen.hpp"
#include "stackydeg/curve.hpp"

#include <doctest.h>

using namespace stackydeg;
using gen::make_node;

namespace {
TwistedCurve two_genus2() {
  TwistedCurve c;
  c.components = {{0, 2}, {1, 2}};
  c.nodes = {make_node(0, 0, 1, 1, true), make_node(1, 0, 1, 1, true)};
  return c;
}

TwistedCurve p1_between_two(int stab = 1) {
  TwistedCurve c;
  c.components = {{0, 2}, {1, 0}, {2, 2}};
  c.nodes = {make_node(0, 0, 1, stab, false), make_node(1, 1, 2, stab, false)};
  return c;
}
}  // namespace

TEST_CASE("arithmetic genus") {
  TwistedCurve c;
  c.components = {{0, 2}};
  CHECK(arithmetic_genus(c) == 2);
  CHECK(arithmetic_genus(two_genus2()) == 5);
  c.components = {{0, 0}};
  c.nodes = {make_node(0, 0, 0, 1, false)};
  CHECK(arithmetic_genus(c) == 1);
  c.components = {{0, 1}, {1, 1}};
  c.nodes.clear();
  CHECK_THROWS_AS(arithmetic_genus(c), CurveError);
}

TEST_CASE("omega degree") {
  TwistedCurve c = p1_between_two();
  CHECK(omega_degree_on_component(c, 1) == 0);
  TwistedCurve s;
  s.components = {{0, 2}};
  CHECK(omega_degree_on_component(s, 0) == 2);
  TwistedCurve m;
  m.components = {{0, 0}, {1, 3}};
  m.nodes = {make_node(0, 0, 1, 1, false)};
  m.markings = {{0, 0, 1}};
  CHECK(omega_degree_on_component(m, 0, true) == 0);
  CHECK(omega_degree_on_component(m, 0, false) == -1);
  CHECK_THROWS_AS(omega_degree_on_component(m, 9), CurveError);
}

TEST_CASE("quasi stability classes") {
  auto rep = quasi_stability_check(p1_between_two(), {});
  CHECK(rep[1].cls == StabilityClass::DestabilizingP1);
  CHECK(rep[0].cls == StabilityClass::Stable);

  TwistedCurve s;
  s.components = {{0, 2}};
  CHECK(quasi_stability_check(s, {})[0].cls == StabilityClass::Stable);

  TwistedCurve tail;
  tail.components = {{0, 2}, {1, 0}};
  tail.nodes = {make_node(0, 0, 1, 1, false)};
  CHECK(quasi_stability_check(tail, {})[1].cls == StabilityClass::Violation);
  CHECK(quasi_stability_check(tail, {{1, Rat(1)}})[1].cls == StabilityClass::DestabilizingP1);
  CHECK(quasi_stability_check(tail, {{1, Rat(2)}})[1].cls == StabilityClass::Stable);

  TwistedCurve ell;
  ell.components = {{0, 1}};
  CHECK(quasi_stability_check(ell, {})[0].cls == StabilityClass::Violation);
}

TEST_CASE("torsion criterion") {
  MultiDegree md(2);
  md.set(0, 0, Rat(0));
  CHECK(is_torsion_on_component(md, 0));
  MultiDegree one(1);
  one.set(0, 0, make_rat(1, 4));
  CHECK_FALSE(is_torsion_on_component(one, 0));
  md.set(1, 0, make_rat(-1, 3));
  CHECK_FALSE(is_torsion_on_component(md, 0));
}

TEST_CASE("validation") {
  TwistedCurve c = p1_between_two();
  MultiDegree md(1);
  auto rep = validate_twisted_map(c, md, {});
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].kind == ViolationKind::Cond4);
  CHECK(rep.violations[0].component == ComponentId{1});
  CHECK_FALSE(rep.notes.empty());

  md.set(0, 1, Rat(1));
  md.set(0, 0, Rat(-1));
  CHECK(validate_twisted_map(c, md, {}).ok());

  md.set(0, 1, make_rat(1, 2));
  md.set(0, 0, make_rat(-1, 2));
  rep = validate_twisted_map(c, md, {});
  CHECK(rep.violations.size() == 2);
  for (const auto& v : rep.violations) CHECK(v.kind == ViolationKind::Cond3);
  CHECK(validate_twisted_map(p1_between_two(2), md, {}).ok());

  TwistedCurve split;
  split.components = {{0, 2}, {1, 2}};
  rep = validate_twisted_map(split, MultiDegree(1), {});
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].kind == ViolationKind::Cond1);
}

TEST_CASE("generation bounds") {
  GradingSpec g;
  g.d = {3, 2};
  g.weights = {std::vector<int>{-4, 1}, std::nullopt};
  CHECK(g.bound(0).d == 4);
  CHECK(g.bound(0).source == GradingSpec::Source::MinimalFromWeights);
  CHECK(g.bound(1).d == 2);
  CHECK(g.bound(1).source == GradingSpec::Source::Supplied);
  g.weights[0] = std::vector<int>{0};
  CHECK(g.bound(0).d == 1);
}

TEST_CASE("DOT export labels") {
  TwistedCurve c = p1_between_two(3);
  c.nodes[0].sing_a = 6;
  MultiDegree md(1);
  md.set(0, 1, make_rat(1, 3));
  const std::string dot = to_dot(c, &md);
  CHECK(dot.find("g=0") != std::string::npos);
  CHECK(dot.find("deg=(1/3)") != std::string::npos);
  CHECK(dot.find("\xce\xbc_3 A_5") != std::string::npos);
}

TEST_CASE("coarse degree identity on random curves") {
  gen::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    auto in = gen::stable_family(rng);
    Rat total(0);
    for (const auto& comp : in.curve.components) total += omega_degree_on_component(in.curve, comp.id);
    CHECK(total == Rat(2 * arithmetic_genus(in.curve) - 2 + static_cast<long>(in.curve.markings.size())));
    CHECK(arithmetic_genus(in.curve) == gen::genus_oracle(in.curve));
  }
}
