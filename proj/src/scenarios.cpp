#include "stackydeg/scenarios.hpp"

#include <numeric>

namespace stackydeg {

namespace {

Mat mono(std::int64_t m) { return Mat(1, 1, {RatFunc::t_pow(m)}); }

int positive(const std::optional<int>& v, int fallback, const char* flag) {
  int x = v.value_or(fallback);
  if (x < 1) throw InputError(std::string("--") + flag, "must be >= 1");
  return x;
}

Node node(NodeId id, ComponentId a, ComponentId b, int stab, bool persistent) {
  Node n;
  n.id = id;
  n.ends = {a, b};
  n.stab = stab;
  n.persistent = persistent;
  return n;
}

// Smooth genus-2 curve with a marked point; the section of O(p) already
// extends and nothing happens.
DegenerationInput theta1() {
  DegenerationInput in;
  in.curve.components = {{0, 2}};
  in.curve.markings = {{0, 0, 1}};
  in.multidegree = MultiDegree(1);
  in.multidegree.set(0, 0, Rat(1));
  in.grading.d = {1};
  return in;
}

// Stable curve with one mu_k self-node glued by t^m.
DegenerationInput theta2(const ScenarioParams& p) {
  const int k = positive(p.k, 2, "k");
  const int d = positive(p.d, 2, "d");
  const int m = positive(p.m, 1, "m");
  DegenerationInput in;
  in.curve.components = {{0, 2}};
  in.curve.nodes = {node(0, 0, 0, k, true)};
  in.multidegree = MultiDegree(1);
  in.multidegree.set(0, 0, Rat(1));
  in.grading.d = {d};
  in.gluing[0] = mono(m);
  in.extra_mu[0] = k;
  return in;
}

// C' of genus 2 meeting a destabilizing stacky P^1 at a mu_k node n1 and a
// mu_{k'd} node n2, glued by t^{m1} and t^{m2}.
DegenerationInput theta3(const ScenarioParams& p) {
  const int k = positive(p.k, 2, "k");
  const int d = positive(p.d, 2, "d");
  const int m1 = positive(p.m, 3, "m");
  const int m2 = p.m2.value_or(1);
  if (m2 < 0) throw InputError("--m2", "must be >= 0");
  const int kp = k / std::gcd(k, d - 1);
  DegenerationInput in;
  in.curve.components = {{0, 2}, {1, 0}};
  in.curve.nodes = {node(0, 0, 1, k, true), node(1, 0, 1, kp * d, true)};
  in.multidegree = MultiDegree(1);
  Rat e(1, static_cast<unsigned long>(d) * static_cast<unsigned long>(k));
  e.canonicalize();
  in.multidegree.set(0, 1, e);
  in.multidegree.set(0, 0, Rat(1) - e);
  in.grading.d = {d};
  in.gluing[0] = mono(m1);
  in.gluing[1] = mono(m2);
  in.extra_mu[0] = k;
  return in;
}

// Two genus-2 curves joined at two nodes, one glued by 1 and one by t.
DegenerationInput bridge() {
  DegenerationInput in;
  in.curve.components = {{0, 2}, {1, 2}};
  in.curve.nodes = {node(0, 0, 1, 1, true), node(1, 0, 1, 1, true)};
  in.multidegree = MultiDegree(1);
  in.multidegree.set(0, 0, Rat(0));
  in.multidegree.set(0, 1, Rat(0));
  in.grading.d = {1};
  in.gluing[0] = mono(0);
  in.gluing[1] = mono(1);
  return in;
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"theta-example-1", "theta-example-2", "theta-example-3", "two-genus2-bridge"};
}

bool is_scenario(const std::string& name) {
  for (const auto& n : scenario_names())
    if (n == name) return true;
  return false;
}

DegenerationInput builtin_scenario(const std::string& name, const ScenarioParams& p) {
  if (name == "theta-example-1") return theta1();
  if (name == "theta-example-2") return theta2(p);
  if (name == "theta-example-3") return theta3(p);
  if (name == "two-genus2-bridge") return bridge();
  throw InputError("", "unknown scenario '" + name + "'");
}

}  // namespace stackydeg
