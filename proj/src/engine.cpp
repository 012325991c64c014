#include "stackydeg/engine.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace stackydeg {

BlowupParameters compute_blowup_parameters(const Mat& gluing, const GradingSpec& grading) {
  BlowupParameters out;
  out.snf = smith_normal_form(gluing);
  for (std::size_t k = 0; k < out.snf.diag_valuations.size(); ++k) {
    const auto b = grading.bound(k);
    if (b.d < 1) throw EngineError("generation bound for factor " + std::to_string(k) + " must be >= 1");
    out.params.push_back({k, static_cast<int>(out.snf.diag_valuations[k]), b.d, b.source});
  }
  return out;
}

GluingShift normalize_gluing_valuations(std::int64_t m1, std::int64_t m2, int k) {
  if (k < 1) throw EngineError("stacky order must be >= 1");
  GluingShift s;
  s.global_shift = -m2;
  const std::int64_t diff = m1 - m2;
  if (diff < 0) s.delta = (-diff + k - 1) / k;
  s.m1 = diff + k * s.delta;
  s.m2 = 0;
  return s;
}

GluingShift normalize_destabilizing_gluing(const TwistedCurve& curve, ComponentId comp,
                                           std::int64_t m1, std::int64_t m2, int k) {
  const Component* c = curve.find_component(comp);
  if (!c) throw EngineError("unknown component " + std::to_string(comp));
  if (c->genus != 0) throw EngineError("component " + std::to_string(comp) + " is not rational");
  const auto nodes = curve.incident_nodes(comp);
  if (nodes.size() != 2 || curve.node_branches(comp) != 2)
    throw EngineError("component " + std::to_string(comp) + " does not have exactly two nodes");
  return normalize_gluing_valuations(m1, m2, k);
}

InsertResult insert_exceptional_chain(const TwistedCurve& curve, const MultiDegree& md,
                                      NodeId node, const std::vector<FactorParams>& params,
                                      std::optional<int> extra_mu) {
  const Node* orig = curve.find_node(node);
  if (!orig) throw EngineError("unknown node " + std::to_string(node));
  if (!orig->persistent) throw EngineError("node " + std::to_string(node) + " is not persistent");
  if (params.empty()) throw EngineError("no blow-up parameters for node " + std::to_string(node));
  if (params.size() != md.n_factors())
    throw EngineError("expected " + std::to_string(md.n_factors()) + " blow-up parameters, got " +
                      std::to_string(params.size()));
  if (extra_mu && (*extra_mu < 1 || orig->stab != *extra_mu))
    throw EngineError("extra mu_" + std::to_string(*extra_mu) + " does not match the stabilizer of node " +
                      std::to_string(node));

  InsertResult res{curve, md, {}, {}};
  const int k = extra_mu.value_or(1);
  ComponentId prev = orig->ends[1];
  for (const auto& p : params) {
    if (p.m < 0) throw EngineError("negative blow-up parameter");
    if (p.m == 0) continue;
    if (p.d < 1) throw EngineError("generation bound must be >= 1");
    const ComponentId e = res.curve.next_component_id();
    const NodeId sn = res.curve.next_node_id();
    res.curve.components.push_back({e, 0});

    Node smoothing;
    smoothing.id = sn;
    smoothing.ends = {e, prev};
    smoothing.persistent = false;
    if (extra_mu) {
      const int kp = k / std::gcd(k, p.d - 1);
      smoothing.stab = kp * p.d;
      smoothing.sing_a = k * p.d * p.m;
    } else {
      smoothing.stab = p.d;
      smoothing.sing_a = p.m * p.d;
    }
    res.curve.nodes.push_back(smoothing);
    res.curve.find_node(node)->ends[1] = e;

    Rat share(1, static_cast<unsigned long>(p.d) * static_cast<unsigned long>(k));
    share.canonicalize();
    for (std::size_t f = 0; f < res.multidegree.n_factors(); ++f)
      res.multidegree.set(f, e, f == p.factor ? share : Rat(0));
    res.multidegree.add(p.factor, prev, -share);

    res.inserted.push_back(e);
    res.new_nodes.push_back(sn);
    prev = e;
  }
  return res;
}

namespace {

bool is_contractible(const TwistedCurve& c, const MultiDegree& md, const AmpleDegrees& ample,
                     const Component& comp) {
  if (comp.genus != 0 || c.marking_count(comp.id) != 0) return false;
  auto it = ample.find(comp.id);
  if (it != ample.end() && it->second != 0) return false;
  const auto nodes = c.incident_nodes(comp.id);
  if (nodes.size() != 2 || c.node_branches(comp.id) != 2) return false;
  return is_torsion_on_component(md, comp.id);
}

ComponentId other_end(const Node& n, ComponentId comp) {
  return n.ends[0] == comp ? n.ends[1] : n.ends[0];
}

}  // namespace

ContractResult contract_torsion_components(const TwistedCurve& curve, const MultiDegree& md,
                                           const AmpleDegrees& ample) {
  ContractResult res{curve, md, {}};
  for (;;) {
    std::optional<Component> target;
    for (const auto& comp : res.curve.components)
      if (is_contractible(res.curve, res.multidegree, ample, comp) &&
          (!target || comp.id < target->id))
        target = comp;
    if (!target) break;

    auto ids = res.curve.incident_nodes(target->id);
    std::sort(ids.begin(), ids.end());
    const Node n1 = *res.curve.find_node(ids[0]);
    const Node n2 = *res.curve.find_node(ids[1]);
    if (n1.stab != n2.stab)
      throw EngineError("torsion component " + std::to_string(target->id) +
                        " meets nodes with unequal stabilizers mu_" + std::to_string(n1.stab) +
                        " and mu_" + std::to_string(n2.stab));
    const int k = n1.stab;
    if (n1.coarse_a() % k != 0 || n2.coarse_a() % k != 0)
      throw EngineError("singularity at a node of component " + std::to_string(target->id) +
                        " is not compatible with its stabilizer");

    ContractStep step;
    step.removed = target->id;
    step.merged = {n1.id, n2.id};
    step.result_node = n1.id;
    step.k = k;
    step.p_stack = {n1.coarse_a() / k, k};
    step.q_stack = {n2.coarse_a() / k, k};
    step.result = contract_singularity(step.p_stack, step.q_stack, k);

    Node merged = n1;
    merged.ends = {other_end(n1, target->id), other_end(n2, target->id)};
    merged.stab = k;
    merged.persistent = n1.persistent || n2.persistent;
    merged.sing_a = step.result.a;

    auto& nodes = res.curve.nodes;
    nodes.erase(std::remove_if(nodes.begin(), nodes.end(),
                               [&](const Node& n) { return n.id == n2.id; }),
                nodes.end());
    *res.curve.find_node(n1.id) = merged;
    auto& comps = res.curve.components;
    comps.erase(std::remove_if(comps.begin(), comps.end(),
                               [&](const Component& c) { return c.id == target->id; }),
                comps.end());
    res.multidegree.erase_component(target->id);
    res.steps.push_back(step);
  }
  return res;
}

// ---------------------------------------------------------------------------

void check_input(const DegenerationInput& in) {
  const std::size_t n = in.multidegree.n_factors();
  if (n < 1) throw InputError("/multidegree/n_factors", "must be >= 1");

  ValidationReport graph = validate_twisted_map(in.curve, in.multidegree, {});
  for (const auto& v : graph.violations)
    if (v.kind == ViolationKind::Cond1) throw InputError("", "curve: " + v.detail);

  for (std::size_t k = 0; k < n; ++k) {
    const bool weighted = k < in.grading.weights.size() && in.grading.weights[k];
    if (!weighted) {
      if (k >= in.grading.d.size())
        throw InputError("/grading/d", "needs one bound per factor");
      if (in.grading.d[k] < 1)
        throw InputError("/grading/d/" + std::to_string(k), "generation bound must be >= 1");
    }
  }

  for (const auto& node : in.curve.nodes) {
    if (!node.persistent) continue;
    if (!in.gluing.count(node.id))
      throw InputError("/gluing", "persistent node " + std::to_string(node.id) + " has no gluing");
  }
  for (const auto& [id, g] : in.gluing) {
    const std::string ptr = "/gluing/" + std::to_string(id);
    const Node* node = in.curve.find_node(id);
    if (!node) throw InputError(ptr, "unknown node");
    if (!node->persistent) throw InputError(ptr, "gluing given for a node that is not persistent");
    if (g.rows() != n || g.cols() != n)
      throw InputError(ptr, "gluing must be " + std::to_string(n) + "x" + std::to_string(n));
    if (valuation_of_det(g).is_infinite()) throw InputError(ptr, "gluing matrix is singular");
  }
  for (const auto& [id, k] : in.extra_mu) {
    const std::string ptr = "/extra_mu/" + std::to_string(id);
    const Node* node = in.curve.find_node(id);
    if (!node) throw InputError(ptr, "unknown node");
    if (k < 1) throw InputError(ptr, "must be >= 1");
    if (node->stab != k) throw InputError(ptr, "does not match the node's stabilizer order");
  }
  for (const auto& [comp, deg] : in.ample)
    if (!in.curve.has_component(comp))
      throw InputError("/ample_deg/" + std::to_string(comp), "unknown component");
}

namespace {

struct Pipeline {
  DegenerationInput in;
  DegenerationOutput out;
  std::vector<Rat> initial_totals;
  int initial_genus = 0;

  [[noreturn]] void fail(const std::string& what) {
    out.limit_curve = in.curve;
    out.limit_multidegree = in.multidegree;
    out.limit_ample = in.ample;
    throw DegenerationFailure(what, out);
  }

  std::vector<Rat> totals_checked(const char* stage) {
    auto t = in.multidegree.totals();
    if (t != initial_totals) fail(std::string("degree not conserved after ") + stage);
    return t;
  }

  void normalize() {
    if (in.multidegree.n_factors() != 1) return;
    std::set<NodeId> touched;
    for (const auto& s : quasi_stability_check(in.curve, in.ample)) {
      if (s.cls != StabilityClass::DestabilizingP1) continue;
      const ComponentId comp = s.comp;
      auto ids = in.curve.incident_nodes(comp);
      if (ids.size() != 2 || in.curve.node_branches(comp) != 2) continue;
      std::sort(ids.begin(), ids.end());
      const Node* a = in.curve.find_node(ids[0]);
      const Node* b = in.curve.find_node(ids[1]);
      if (!a->persistent || !b->persistent) continue;
      if (touched.count(a->id) || touched.count(b->id)) {
        out.notes.push_back("normalization skipped on component " + std::to_string(comp) +
                            ": a node was already normalized");
        continue;
      }
      // The one-sided shift lives at the mu_k point.
      NodeId n1 = a->id, n2 = b->id;
      if (!in.extra_mu.count(n1) && in.extra_mu.count(n2)) std::swap(n1, n2);

      NormalizeRecord rec;
      rec.comp = comp;
      rec.shifted_node = n1;
      rec.other_node = n2;
      for (NodeId id : {n1, n2}) {
        Node* node = in.curve.find_node(id);
        if (node->ends[1] != comp) {
          std::swap(node->ends[0], node->ends[1]);
          in.gluing[id] = inverse(in.gluing[id]);
          rec.reoriented.push_back(id);
        }
      }
      auto it = in.extra_mu.find(n1);
      rec.k = it != in.extra_mu.end() ? it->second : in.curve.find_node(n1)->stab;
      rec.m1_before = val(in.gluing[n1](0, 0)).value();
      rec.m2_before = val(in.gluing[n2](0, 0)).value();
      rec.shift = normalize_destabilizing_gluing(in.curve, comp, rec.m1_before, rec.m2_before, rec.k);
      in.gluing[n1] = RatFunc::t_pow(rec.shift.m1 - rec.m1_before) * in.gluing[n1];
      in.gluing[n2] = RatFunc::t_pow(-rec.m2_before) * in.gluing[n2];
      touched.insert(n1);
      touched.insert(n2);
      rec.degree_totals = totals_checked("normalize");
      out.log.emplace_back(std::move(rec));
    }
  }

  void insert_all() {
    std::vector<NodeId> persistent;
    for (const auto& n : in.curve.nodes)
      if (n.persistent) persistent.push_back(n.id);
    std::sort(persistent.begin(), persistent.end());
    bool multi_note = false;

    for (NodeId id : persistent) {
      SnfRecord snf;
      snf.node = id;
      Mat g = in.gluing.at(id);
      const Valuation v = valuation_of_det(g);
      if (v < Valuation(0)) {
        g = inverse(g);
        snf.inverted = true;
      }
      BlowupParameters bp = compute_blowup_parameters(g, in.grading);
      snf.snf = bp.snf;
      snf.params = bp.params;
      snf.degree_totals = totals_checked("snf");
      out.log.emplace_back(snf);

      std::optional<int> mu;
      if (auto it = in.extra_mu.find(id); it != in.extra_mu.end()) mu = it->second;
      InsertResult ins = insert_exceptional_chain(in.curve, in.multidegree, id, bp.params, mu);
      if (ins.inserted.empty()) continue;
      in.curve = std::move(ins.curve);
      in.multidegree = std::move(ins.multidegree);
      if (ins.inserted.size() > 1) multi_note = true;

      InsertRecord rec;
      rec.node = id;
      rec.extra_mu = mu;
      rec.params = bp.params;
      rec.inserted = ins.inserted;
      rec.new_nodes = ins.new_nodes;
      rec.degree_totals = totals_checked("insert");
      out.log.emplace_back(std::move(rec));
    }
    if (multi_note)
      out.notes.push_back(
          "several factors blew up at one node; their components are chained in factor order");
  }

  void contract() {
    ContractResult c = contract_torsion_components(in.curve, in.multidegree, in.ample);
    in.curve = std::move(c.curve);
    in.multidegree = std::move(c.multidegree);
    for (const auto& step : c.steps) {
      in.ample.erase(step.removed);
      out.log.emplace_back(ContractRecord{step, totals_checked("contract")});
    }
  }
};

}  // namespace

DegenerationOutput degenerate(const DegenerationInput& input) {
  check_input(input);
  Pipeline p{input, {}, input.multidegree.totals(), arithmetic_genus(input.curve)};
  p.out.notes.push_back(
      "minimal extension: the limit section vanishes on no full component; twisting by "
      "multiples of an exceptional divisor gives other extensions with the same generic fiber");
  p.out.notes.push_back(
      "degrees away from the exceptional components are fixed by conservation: the blown-up "
      "branch loses what each exceptional component gains");
  for (std::size_t k = 0; k < input.multidegree.n_factors(); ++k) {
    const auto b = input.grading.bound(k);
    p.out.notes.push_back("factor " + std::to_string(k) + ": generation bound d=" +
                          std::to_string(b.d) +
                          (b.source == GradingSpec::Source::MinimalFromWeights
                               ? " (minimal, from weights)"
                               : " (supplied)"));
  }

  try {
    p.normalize();
    p.insert_all();
    p.contract();
  } catch (const DegenerationFailure&) {
    throw;
  } catch (const EngineError& e) {
    p.fail(e.what());
  } catch (const BlowupError& e) {
    p.fail(e.what());
  } catch (const CurveError& e) {
    p.fail(e.what());
  } catch (const SingularMatrix& e) {
    p.fail(e.what());
  }

  if (arithmetic_genus(p.in.curve) != p.initial_genus) p.fail("arithmetic genus changed");
  p.out.limit_curve = p.in.curve;
  p.out.limit_multidegree = p.in.multidegree;
  p.out.limit_ample = p.in.ample;
  p.out.validation = validate_twisted_map(p.in.curve, p.in.multidegree, p.in.ample);
  if (!p.out.validation.ok()) {
    std::string what = "limit is not a twisted map: ";
    for (std::size_t i = 0; i < p.out.validation.violations.size(); ++i)
      what += (i ? "; " : "") + to_string(p.out.validation.violations[i].kind);
    throw DegenerationFailure(what, p.out);
  }
  return p.out;
}

}  // namespace stackydeg
