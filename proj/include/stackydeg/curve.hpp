#pragma once

// Twisted nodal curves as decorated dual graphs, multidegrees of line
// bundles, and the stability / torsion predicates for twisted maps.

#include "stackydeg/field.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stackydeg {

using ComponentId = std::int64_t;
using NodeId = std::int64_t;
using MarkingId = std::int64_t;

class CurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Component {
  ComponentId id = 0;
  int genus = 0;
  bool coarse_is_p1() const { return genus == 0; }
  friend bool operator==(const Component&, const Component&) = default;
};

struct Node {
  NodeId id = 0;
  /// Unordered as a graph edge, but the order is significant to the engine:
  /// the second endpoint is the branch that gets blown up.
  std::array<ComponentId, 2> ends{};
  int stab = 1;  ///< order of the cyclic stabilizer mu_stab
  bool persistent = false;  ///< the node does not smooth over the base
  /// Coarse A-type singularity of the total space: xy = z^a. Absent means
  /// the stack is smooth there, i.e. coarse a = stab.
  std::optional<int> sing_a;

  bool is_self_node() const { return ends[0] == ends[1]; }
  int coarse_a() const { return sing_a.value_or(stab); }
  friend bool operator==(const Node&, const Node&) = default;
};

struct Marking {
  MarkingId id = 0;
  ComponentId comp = 0;
  int gerbe = 1;
  friend bool operator==(const Marking&, const Marking&) = default;
};

/// Decorated dual graph. The arithmetic genus is always recomputed, never
/// stored.
struct TwistedCurve {
  std::vector<Component> components;
  std::vector<Node> nodes;
  std::vector<Marking> markings;

  const Component* find_component(ComponentId id) const;
  const Node* find_node(NodeId id) const;
  Node* find_node(NodeId id);
  bool has_component(ComponentId id) const { return find_component(id) != nullptr; }

  /// Node branches on a component; a self-node contributes two.
  int node_branches(ComponentId comp) const;
  /// Ids of nodes touching the component (a self-node is listed once).
  std::vector<NodeId> incident_nodes(ComponentId comp) const;
  int marking_count(ComponentId comp) const;
  bool is_connected() const;

  ComponentId next_component_id() const;
  NodeId next_node_id() const;

  friend bool operator==(const TwistedCurve&, const TwistedCurve&) = default;
};

/// Rational degrees of a G_m^n-bundle: one degree per (factor, component).
class MultiDegree {
 public:
  MultiDegree() = default;
  explicit MultiDegree(std::size_t n_factors) : n_factors_(n_factors) {}

  std::size_t n_factors() const { return n_factors_; }
  /// Missing entries read as 0.
  Rat get(std::size_t factor, ComponentId comp) const;
  void set(std::size_t factor, ComponentId comp, const Rat& value);
  void add(std::size_t factor, ComponentId comp, const Rat& delta);
  void erase_component(ComponentId comp) { deg_.erase(comp); }
  /// Sum over components, per factor.
  std::vector<Rat> totals() const;
  const std::map<ComponentId, std::vector<Rat>>& table() const { return deg_; }

  friend bool operator==(const MultiDegree&, const MultiDegree&) = default;

 private:
  std::size_t n_factors_ = 1;
  std::map<ComponentId, std::vector<Rat>> deg_;
};

/// Generation bounds d_k of the grading induced by each torus factor.
struct GradingSpec {
  std::vector<int> d;
  /// Optional generator weights; when present for factor k the effective
  /// bound is the largest absolute weight.
  std::vector<std::optional<std::vector<int>>> weights;

  enum class Source { Supplied, MinimalFromWeights };
  struct Bound {
    int d = 1;
    Source source = Source::Supplied;
  };
  Bound bound(std::size_t factor) const;
};

/// Per-component degrees of the pulled-back ample line bundle. Missing
/// components read as 0 (a target whose good moduli space is a point).
using AmpleDegrees = std::map<ComponentId, Rat>;

int arithmetic_genus(const TwistedCurve& c);

/// 2g - 2 + node branches (+ markings), computed on the coarse curve.
Rat omega_degree_on_component(const TwistedCurve& c, ComponentId comp,
                              bool extra_markings = true);

enum class StabilityClass { Stable, DestabilizingP1, Violation };
std::string to_string(StabilityClass s);

struct ComponentStability {
  ComponentId comp = 0;
  StabilityClass cls = StabilityClass::Stable;
  Rat total;  ///< ample degree + omega degree
};

std::vector<ComponentStability> quasi_stability_check(const TwistedCurve& c,
                                                      const AmpleDegrees& ample);

/// Every factor has degree 0 on the component.
bool is_torsion_on_component(const MultiDegree& md, ComponentId comp);

/// lcm of the stabilizer orders of nodes and markings on the component,
/// together with 1.
std::int64_t local_stabilizer_lcm(const TwistedCurve& c, ComponentId comp);

enum class ViolationKind { Cond1, Cond2, Cond3, Cond4 };
std::string to_string(ViolationKind k);

struct Violation {
  ViolationKind kind = ViolationKind::Cond1;
  std::optional<ComponentId> component;
  std::optional<NodeId> node;
  std::string detail;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Checks the four twisted-map conditions on the combinatorial model:
///  1. well-formed connected dual graph,
///  2. quasi stability (no Violation class),
///  3. stacky structure away from nodes only on markings; degrees must be
///     supported by the local stabilizers,
///  4. no destabilizing component carries a torsion bundle.
ValidationReport validate_twisted_map(const TwistedCurve& c, const MultiDegree& md,
                                      const AmpleDegrees& ample);

/// Graphviz rendering of the dual graph; degrees are added to the labels
/// when `md` is given.
std::string to_dot(const TwistedCurve& c, const MultiDegree* md = nullptr);

}  // namespace stackydeg
