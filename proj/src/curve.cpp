#include "stackydeg/curve.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace stackydeg {

const Component* TwistedCurve::find_component(ComponentId id) const {
  auto it = std::find_if(components.begin(), components.end(),
                         [id](const Component& c) { return c.id == id; });
  return it == components.end() ? nullptr : &*it;
}

const Node* TwistedCurve::find_node(NodeId id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [id](const Node& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

Node* TwistedCurve::find_node(NodeId id) {
  auto it = std::find_if(nodes.begin(), nodes.end(), [id](const Node& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

int TwistedCurve::node_branches(ComponentId comp) const {
  int count = 0;
  for (const auto& n : nodes) count += (n.ends[0] == comp) + (n.ends[1] == comp);
  return count;
}

std::vector<NodeId> TwistedCurve::incident_nodes(ComponentId comp) const {
  std::vector<NodeId> out;
  for (const auto& n : nodes)
    if (n.ends[0] == comp || n.ends[1] == comp) out.push_back(n.id);
  return out;
}

int TwistedCurve::marking_count(ComponentId comp) const {
  return static_cast<int>(std::count_if(markings.begin(), markings.end(),
                                        [comp](const Marking& m) { return m.comp == comp; }));
}

bool TwistedCurve::is_connected() const {
  if (components.empty()) return false;
  std::set<ComponentId> seen{components.front().id};
  std::vector<ComponentId> stack{components.front().id};
  while (!stack.empty()) {
    ComponentId cur = stack.back();
    stack.pop_back();
    for (const auto& n : nodes) {
      for (int side = 0; side < 2; ++side) {
        if (n.ends[side] != cur) continue;
        ComponentId other = n.ends[1 - side];
        if (has_component(other) && seen.insert(other).second) stack.push_back(other);
      }
    }
  }
  return seen.size() == components.size();
}

ComponentId TwistedCurve::next_component_id() const {
  ComponentId m = -1;
  for (const auto& c : components) m = std::max(m, c.id);
  return m + 1;
}

NodeId TwistedCurve::next_node_id() const {
  NodeId m = -1;
  for (const auto& n : nodes) m = std::max(m, n.id);
  return m + 1;
}

// ---------------------------------------------------------------------------

Rat MultiDegree::get(std::size_t factor, ComponentId comp) const {
  auto it = deg_.find(comp);
  if (it == deg_.end() || factor >= it->second.size()) return Rat(0);
  return it->second[factor];
}

void MultiDegree::set(std::size_t factor, ComponentId comp, const Rat& value) {
  if (factor >= n_factors_) throw CurveError("factor index out of range");
  auto& row = deg_[comp];
  row.resize(n_factors_, Rat(0));
  row[factor] = value;
}

void MultiDegree::add(std::size_t factor, ComponentId comp, const Rat& delta) {
  set(factor, comp, get(factor, comp) + delta);
}

std::vector<Rat> MultiDegree::totals() const {
  std::vector<Rat> out(n_factors_, Rat(0));
  for (const auto& [comp, row] : deg_)
    for (std::size_t k = 0; k < row.size() && k < n_factors_; ++k) out[k] += row[k];
  return out;
}

GradingSpec::Bound GradingSpec::bound(std::size_t factor) const {
  if (factor < weights.size() && weights[factor]) {
    int best = 0;
    for (int w : *weights[factor]) best = std::max(best, std::abs(w));
    // A grading concentrated in degree 0 still needs a positive bound.
    return {std::max(best, 1), Source::MinimalFromWeights};
  }
  if (factor >= d.size()) throw CurveError("no generation bound for factor " + std::to_string(factor));
  return {d[factor], Source::Supplied};
}

// ---------------------------------------------------------------------------

int arithmetic_genus(const TwistedCurve& c) {
  if (!c.is_connected()) throw CurveError("arithmetic genus of a disconnected curve");
  int g = 0;
  for (const auto& comp : c.components) g += comp.genus;
  return g + static_cast<int>(c.nodes.size()) - static_cast<int>(c.components.size()) + 1;
}

Rat omega_degree_on_component(const TwistedCurve& c, ComponentId comp, bool extra_markings) {
  const Component* k = c.find_component(comp);
  if (!k) throw CurveError("unknown component " + std::to_string(comp));
  int deg = 2 * k->genus - 2 + c.node_branches(comp);
  if (extra_markings) deg += c.marking_count(comp);
  return Rat(deg);
}

std::string to_string(StabilityClass s) {
  switch (s) {
    case StabilityClass::Stable: return "STABLE";
    case StabilityClass::DestabilizingP1: return "DESTABILIZING_P1";
    case StabilityClass::Violation: return "VIOLATION";
  }
  return "?";
}

std::vector<ComponentStability> quasi_stability_check(const TwistedCurve& c,
                                                      const AmpleDegrees& ample) {
  std::vector<ComponentStability> out;
  for (const auto& comp : c.components) {
    auto it = ample.find(comp.id);
    Rat total = (it == ample.end() ? Rat(0) : it->second) +
                omega_degree_on_component(c, comp.id, true);
    StabilityClass cls = StabilityClass::Violation;
    if (total > 0)
      cls = StabilityClass::Stable;
    else if (total == 0 && comp.genus == 0)
      cls = StabilityClass::DestabilizingP1;
    out.push_back({comp.id, cls, total});
  }
  return out;
}

bool is_torsion_on_component(const MultiDegree& md, ComponentId comp) {
  for (std::size_t k = 0; k < md.n_factors(); ++k)
    if (md.get(k, comp) != 0) return false;
  return true;
}

std::int64_t local_stabilizer_lcm(const TwistedCurve& c, ComponentId comp) {
  std::int64_t l = 1;
  for (const auto& n : c.nodes)
    if (n.ends[0] == comp || n.ends[1] == comp) l = std::lcm(l, std::int64_t{n.stab});
  for (const auto& m : c.markings)
    if (m.comp == comp) l = std::lcm(l, std::int64_t{m.gerbe});
  return l;
}

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::Cond1: return "Cond1Violation";
    case ViolationKind::Cond2: return "Cond2Violation";
    case ViolationKind::Cond3: return "Cond3Violation";
    case ViolationKind::Cond4: return "Cond4Violation";
  }
  return "?";
}

namespace {

void check_graph(const TwistedCurve& c, const MultiDegree& md, std::vector<Violation>& out) {
  auto v1 = [&out](std::string detail, std::optional<ComponentId> comp = {},
                   std::optional<NodeId> node = {}) {
    out.push_back({ViolationKind::Cond1, comp, node, std::move(detail)});
  };
  if (c.components.empty()) {
    v1("curve has no components");
    return;
  }
  std::set<ComponentId> comp_ids;
  for (const auto& comp : c.components) {
    if (!comp_ids.insert(comp.id).second) v1("duplicate component id", comp.id);
    if (comp.genus < 0) v1("negative genus", comp.id);
  }
  std::set<NodeId> node_ids;
  for (const auto& n : c.nodes) {
    if (!node_ids.insert(n.id).second) v1("duplicate node id", {}, n.id);
    if (!comp_ids.count(n.ends[0]) || !comp_ids.count(n.ends[1]))
      v1("node endpoint is not a component", {}, n.id);
    if (n.stab < 1) v1("stabilizer order must be >= 1", {}, n.id);
    if (n.sing_a && *n.sing_a < 1) v1("singularity index must be >= 1", {}, n.id);
  }
  std::set<MarkingId> marking_ids;
  for (const auto& m : c.markings) {
    if (!marking_ids.insert(m.id).second) v1("duplicate marking id");
    if (!comp_ids.count(m.comp)) v1("marking on an unknown component");
    if (m.gerbe < 1) v1("gerbe order must be >= 1");
  }
  for (const auto& [comp, row] : md.table())
    if (!comp_ids.count(comp)) v1("multidegree names an unknown component", comp);
  if (!c.is_connected()) v1("dual graph is disconnected");
}

}  // namespace

ValidationReport validate_twisted_map(const TwistedCurve& c, const MultiDegree& md,
                                      const AmpleDegrees& ample) {
  ValidationReport rep;
  rep.notes.push_back(
      "torsion check applies the single-factor degree criterion to each torus factor "
      "separately");
  check_graph(c, md, rep.violations);
  if (!rep.violations.empty()) return rep;

  const auto stability = quasi_stability_check(c, ample);
  for (const auto& s : stability)
    if (s.cls == StabilityClass::Violation)
      rep.violations.push_back({ViolationKind::Cond2, s.comp, {},
                                "omega + ample degree is " + to_string(s.total)});

  // Stacky points away from the nodes live only on markings, so every degree
  // must have its denominator absorbed by the local stabilizers.
  for (const auto& comp : c.components) {
    const Rat l(static_cast<long>(local_stabilizer_lcm(c, comp.id)));
    for (std::size_t k = 0; k < md.n_factors(); ++k) {
      Rat scaled = md.get(k, comp.id) * l;
      if (scaled.get_den() != 1)
        rep.violations.push_back({ViolationKind::Cond3, comp.id, {},
                                  "degree " + to_string(md.get(k, comp.id)) + " in factor " +
                                      std::to_string(k) +
                                      " is not supported by the local stabilizers"});
    }
  }

  for (const auto& s : stability)
    if (s.cls == StabilityClass::DestabilizingP1 && is_torsion_on_component(md, s.comp))
      rep.violations.push_back({ViolationKind::Cond4, s.comp, {},
                                "destabilizing component carries a torsion bundle"});
  return rep;
}

std::string to_dot(const TwistedCurve& c, const MultiDegree* md) {
  std::ostringstream os;
  os << "graph dual {\n";
  for (const auto& comp : c.components) {
    os << "  c" << comp.id << " [shape=ellipse,label=\"g=" << comp.genus;
    if (md) {
      os << "\\ndeg=(";
      for (std::size_t k = 0; k < md->n_factors(); ++k)
        os << (k ? "," : "") << to_string(md->get(k, comp.id));
      os << ")";
    }
    os << "\"];\n";
  }
  for (const auto& n : c.nodes) {
    os << "  c" << n.ends[0] << " -- c" << n.ends[1] << " [label=\"\xce\xbc_" << n.stab;
    if (n.sing_a) os << " A_" << (*n.sing_a - 1);
    os << "\"" << (n.persistent ? ",style=bold" : "") << "];\n";
  }
  for (const auto& m : c.markings) {
    os << "  m" << m.id << " [shape=point];\n";
    os << "  c" << m.comp << " -- m" << m.id << " [label=\"gerbe " << m.gerbe << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace stackydeg
