#include "stackydeg/json_io.hpp"

#include <set>

namespace stackydeg {

namespace {

std::string key_ptr(const std::string& ptr, const std::string& key) {
  std::string esc;
  for (char c : key) {
    if (c == '~') esc += "~0";
    else if (c == '/') esc += "~1";
    else esc += c;
  }
  return ptr + "/" + esc;
}

std::string idx_ptr(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const json& require(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) throw InputError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(key_ptr(ptr, key), "missing field");
  return *it;
}

std::int64_t get_int(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw InputError(ptr, "expected an integer");
  return j.get<std::int64_t>();
}

int get_small_int(const json& j, const std::string& ptr) {
  std::int64_t v = get_int(j, ptr);
  if (v < INT_MIN || v > INT_MAX) throw InputError(ptr, "integer out of range");
  return static_cast<int>(v);
}

const json& require_array(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw InputError(ptr, "expected an array");
  return j;
}

std::int64_t id_from_key(const std::string& key, const std::string& ptr) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(key, &pos);
    if (pos == key.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError(ptr, "expected an integer id as key");
}

json int_list(const std::vector<std::int64_t>& v) { return json(v); }

json rat_list(const std::vector<Rat>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(rat_to_json(r));
  return a;
}

std::string source_name(GradingSpec::Source s) {
  return s == GradingSpec::Source::MinimalFromWeights ? "minimal_from_weights" : "supplied";
}

json params_to_json(const std::vector<FactorParams>& ps) {
  json a = json::array();
  for (const auto& p : ps)
    a.push_back({{"factor", p.factor}, {"m", p.m}, {"d", p.d}, {"d_source", source_name(p.d_source)}});
  return a;
}

json sing_json(const AnSing& s) { return {{"a", s.a}, {"mu", s.mu_order}}; }

}  // namespace

json rat_to_json(const Rat& r) { return to_string(r); }
json ratfunc_to_json(const RatFunc& f) { return to_string(f); }

Rat rat_from_json(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) throw InputError(ptr, "expected a rational \"p/q\" or an integer");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(ptr, e.what());
  }
}

RatFunc ratfunc_from_json(const json& j, const std::string& ptr, long max_degree) {
  if (j.is_number_integer()) return RatFunc(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) throw InputError(ptr, "expected a rational function string");
  try {
    return parse_ratfunc(j.get<std::string>(), max_degree);
  } catch (const std::exception& e) {
    throw InputError(ptr, e.what());
  }
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(ratfunc_to_json(m(r, c)));
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Mat mat_from_json(const json& j, const std::string& ptr, long max_degree) {
  const json& entries = require_array(require(j, ptr, "entries"), ptr + "/entries");
  std::size_t rows = entries.size();
  std::size_t cols = rows && entries[0].is_array() ? entries[0].size() : 0;
  if (j.contains("rows")) rows = static_cast<std::size_t>(get_int(j["rows"], ptr + "/rows"));
  if (j.contains("cols")) cols = static_cast<std::size_t>(get_int(j["cols"], ptr + "/cols"));
  if (entries.size() != rows) throw InputError(ptr + "/entries", "row count does not match \"rows\"");
  std::vector<RatFunc> flat;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = idx_ptr(ptr + "/entries", r);
    const json& row = require_array(entries[r], rp);
    if (row.size() != cols) throw InputError(rp, "row length does not match \"cols\"");
    for (std::size_t c = 0; c < cols; ++c)
      flat.push_back(ratfunc_from_json(row[c], idx_ptr(rp, c), max_degree));
  }
  return Mat(rows, cols, std::move(flat));
}

json curve_to_json(const TwistedCurve& c) {
  json comps = json::array();
  for (const auto& k : c.components) comps.push_back({{"id", k.id}, {"genus", k.genus}});
  json nodes = json::array();
  for (const auto& n : c.nodes) {
    json o = {{"id", n.id},
              {"ends", {n.ends[0], n.ends[1]}},
              {"stab", n.stab},
              {"persistent", n.persistent}};
    if (n.sing_a) o["sing"] = {{"a", *n.sing_a}};
    nodes.push_back(o);
  }
  json marks = json::array();
  for (const auto& m : c.markings) marks.push_back({{"id", m.id}, {"comp", m.comp}, {"gerbe", m.gerbe}});
  return {{"components", comps}, {"nodes", nodes}, {"markings", marks}};
}

TwistedCurve curve_from_json(const json& j, const std::string& ptr) {
  TwistedCurve c;
  const std::string cp = ptr + "/components";
  const json& comps = require_array(require(j, ptr, "components"), cp);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string p = idx_ptr(cp, i);
    Component k;
    k.id = get_int(require(comps[i], p, "id"), p + "/id");
    k.genus = get_small_int(require(comps[i], p, "genus"), p + "/genus");
    if (k.genus < 0) throw InputError(p + "/genus", "must be >= 0");
    c.components.push_back(k);
  }
  if (j.contains("nodes")) {
    const std::string np = ptr + "/nodes";
    const json& nodes = require_array(j["nodes"], np);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::string p = idx_ptr(np, i);
      const json& o = nodes[i];
      Node n;
      n.id = get_int(require(o, p, "id"), p + "/id");
      const json& ends = require_array(require(o, p, "ends"), p + "/ends");
      if (ends.size() != 2) throw InputError(p + "/ends", "expected two component ids");
      n.ends = {get_int(ends[0], p + "/ends/0"), get_int(ends[1], p + "/ends/1")};
      if (o.contains("stab")) n.stab = get_small_int(o["stab"], p + "/stab");
      if (n.stab < 1) throw InputError(p + "/stab", "must be >= 1");
      if (o.contains("persistent")) {
        if (!o["persistent"].is_boolean()) throw InputError(p + "/persistent", "expected a boolean");
        n.persistent = o["persistent"].get<bool>();
      }
      if (o.contains("sing")) {
        n.sing_a = get_small_int(require(o["sing"], p + "/sing", "a"), p + "/sing/a");
        if (*n.sing_a < 1) throw InputError(p + "/sing/a", "must be >= 1");
      }
      c.nodes.push_back(n);
    }
  }
  if (j.contains("markings")) {
    const std::string mp = ptr + "/markings";
    const json& marks = require_array(j["markings"], mp);
    for (std::size_t i = 0; i < marks.size(); ++i) {
      const std::string p = idx_ptr(mp, i);
      Marking m;
      m.id = get_int(require(marks[i], p, "id"), p + "/id");
      m.comp = get_int(require(marks[i], p, "comp"), p + "/comp");
      if (marks[i].contains("gerbe")) m.gerbe = get_small_int(marks[i]["gerbe"], p + "/gerbe");
      if (m.gerbe < 1) throw InputError(p + "/gerbe", "must be >= 1");
      c.markings.push_back(m);
    }
  }
  return c;
}

json multidegree_to_json(const MultiDegree& md) {
  json deg = json::object();
  for (const auto& [comp, row] : md.table()) {
    std::vector<Rat> full(md.n_factors());
    for (std::size_t k = 0; k < full.size(); ++k) full[k] = md.get(k, comp);
    deg[std::to_string(comp)] = rat_list(full);
  }
  return {{"n_factors", md.n_factors()}, {"deg", deg}};
}

MultiDegree multidegree_from_json(const json& j, const std::string& ptr) {
  const std::int64_t n = get_int(require(j, ptr, "n_factors"), ptr + "/n_factors");
  if (n < 1 || n > 64) throw InputError(ptr + "/n_factors", "must be between 1 and 64");
  MultiDegree md(static_cast<std::size_t>(n));
  if (!j.contains("deg")) return md;
  const std::string dp = ptr + "/deg";
  if (!j["deg"].is_object()) throw InputError(dp, "expected an object keyed by component id");
  for (const auto& [key, row] : j["deg"].items()) {
    const std::string rp = key_ptr(dp, key);
    const ComponentId comp = id_from_key(key, rp);
    require_array(row, rp);
    if (row.size() != static_cast<std::size_t>(n))
      throw InputError(rp, "expected " + std::to_string(n) + " degrees");
    for (std::size_t k = 0; k < row.size(); ++k) md.set(k, comp, rat_from_json(row[k], idx_ptr(rp, k)));
  }
  return md;
}

json ample_to_json(const AmpleDegrees& a) {
  json o = json::object();
  for (const auto& [comp, d] : a) o[std::to_string(comp)] = rat_to_json(d);
  return o;
}

json input_to_json(const DegenerationInput& in) {
  json j = curve_to_json(in.curve);
  j["multidegree"] = multidegree_to_json(in.multidegree);
  json g = {{"d", in.grading.d}};
  if (!in.grading.weights.empty()) {
    json w = json::array();
    for (const auto& ws : in.grading.weights) w.push_back(ws ? json(*ws) : json(nullptr));
    g["weights"] = w;
  }
  j["grading"] = g;
  json gl = json::object();
  for (const auto& [id, m] : in.gluing) gl[std::to_string(id)] = mat_to_json(m);
  j["gluing"] = gl;
  if (!in.extra_mu.empty()) {
    json mu = json::object();
    for (const auto& [id, k] : in.extra_mu) mu[std::to_string(id)] = k;
    j["extra_mu"] = mu;
  }
  if (!in.ample.empty()) j["ample_deg"] = ample_to_json(in.ample);
  return j;
}

DegenerationInput input_from_json(const json& j, long max_degree) {
  if (!j.is_object()) throw InputError("", "expected an object");
  DegenerationInput in;
  in.curve = curve_from_json(j, "");
  in.multidegree = multidegree_from_json(require(j, "", "multidegree"));

  const json& g = require(j, "", "grading");
  if (!g.is_object()) throw InputError("/grading", "expected an object");
  if (g.contains("d")) {
    require_array(g["d"], "/grading/d");
    for (std::size_t k = 0; k < g["d"].size(); ++k) {
      const int d = get_small_int(g["d"][k], idx_ptr("/grading/d", k));
      if (d < 1) throw InputError(idx_ptr("/grading/d", k), "generation bound must be >= 1");
      in.grading.d.push_back(d);
    }
  }
  if (g.contains("weights")) {
    require_array(g["weights"], "/grading/weights");
    for (std::size_t k = 0; k < g["weights"].size(); ++k) {
      const json& w = g["weights"][k];
      const std::string wp = idx_ptr("/grading/weights", k);
      if (w.is_null()) {
        in.grading.weights.emplace_back();
        continue;
      }
      require_array(w, wp);
      std::vector<int> ws;
      for (std::size_t i = 0; i < w.size(); ++i) ws.push_back(get_small_int(w[i], idx_ptr(wp, i)));
      in.grading.weights.emplace_back(std::move(ws));
    }
  }

  if (j.contains("gluing")) {
    if (!j["gluing"].is_object()) throw InputError("/gluing", "expected an object keyed by node id");
    for (const auto& [key, m] : j["gluing"].items()) {
      const std::string p = key_ptr("/gluing", key);
      in.gluing[id_from_key(key, p)] = mat_from_json(m, p, max_degree);
    }
  }
  if (j.contains("extra_mu")) {
    if (!j["extra_mu"].is_object()) throw InputError("/extra_mu", "expected an object keyed by node id");
    for (const auto& [key, v] : j["extra_mu"].items()) {
      const std::string p = key_ptr("/extra_mu", key);
      in.extra_mu[id_from_key(key, p)] = get_small_int(v, p);
    }
  }
  if (j.contains("ample_deg")) {
    if (!j["ample_deg"].is_object()) throw InputError("/ample_deg", "expected an object keyed by component id");
    for (const auto& [key, v] : j["ample_deg"].items()) {
      const std::string p = key_ptr("/ample_deg", key);
      in.ample[id_from_key(key, p)] = rat_from_json(v, p);
    }
  }
  check_input(in);
  return in;
}

json snf_to_json(const SnfResult& s) {
  return {{"left", mat_to_json(s.left)},
          {"right", mat_to_json(s.right)},
          {"diagonal", mat_to_json(s.diagonal)},
          {"shift", s.shift},
          {"diag_valuations", int_list(s.diag_valuations)}};
}

json log_entry_to_json(const LogEntry& e) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, NormalizeRecord>) {
          return {{"tag", "normalize"},
                  {"component", r.comp},
                  {"shifted_node", r.shifted_node},
                  {"other_node", r.other_node},
                  {"k", r.k},
                  {"valuations_before", {r.m1_before, r.m2_before}},
                  {"valuations_after", {r.shift.m1, r.shift.m2}},
                  {"global_shift", r.shift.global_shift},
                  {"delta", r.shift.delta},
                  {"reoriented", int_list(r.reoriented)},
                  {"degree_totals", rat_list(r.degree_totals)}};
        } else if constexpr (std::is_same_v<T, SnfRecord>) {
          return {{"tag", "snf"},
                  {"node", r.node},
                  {"inverted", r.inverted},
                  {"snf", snf_to_json(r.snf)},
                  {"params", params_to_json(r.params)},
                  {"degree_totals", rat_list(r.degree_totals)}};
        } else if constexpr (std::is_same_v<T, InsertRecord>) {
          json o = {{"tag", "insert"},
                    {"node", r.node},
                    {"params", params_to_json(r.params)},
                    {"inserted", int_list(r.inserted)},
                    {"new_nodes", int_list(r.new_nodes)},
                    {"degree_totals", rat_list(r.degree_totals)}};
          o["extra_mu"] = r.extra_mu ? json(*r.extra_mu) : json(nullptr);
          return o;
        } else {
          const auto& s = r.step;
          return {{"tag", "contract"},
                  {"removed", s.removed},
                  {"merged", {s.merged[0], s.merged[1]}},
                  {"result_node", s.result_node},
                  {"k", s.k},
                  {"p", sing_json(s.p_stack)},
                  {"q", sing_json(s.q_stack)},
                  {"result", sing_json(s.result)},
                  {"degree_totals", rat_list(r.degree_totals)}};
        }
      },
      e);
}

json validation_to_json(const ValidationReport& r) {
  json vs = json::array();
  for (const auto& v : r.violations) {
    json o = {{"kind", to_string(v.kind)}, {"detail", v.detail}};
    o["component"] = v.component ? json(*v.component) : json(nullptr);
    o["node"] = v.node ? json(*v.node) : json(nullptr);
    vs.push_back(o);
  }
  return {{"violations", vs}, {"notes", r.notes}};
}

json output_to_json(const DegenerationOutput& out) {
  json log = json::array();
  for (const auto& e : out.log) log.push_back(log_entry_to_json(e));
  return {{"limit_curve", curve_to_json(out.limit_curve)},
          {"limit_multidegree", multidegree_to_json(out.limit_multidegree)},
          {"limit_ample_deg", ample_to_json(out.limit_ample)},
          {"log", log},
          {"validation", validation_to_json(out.validation)},
          {"notes", out.notes}};
}

json blowup_to_json(const BlowupParams& p, const BlowupResult& r) {
  return {{"m", p.m},
          {"d", p.d},
          {"exceptional_self_intersection", rat_to_json(r.exceptional_self_intersection)},
          {"ideal_degree_on_exceptional", rat_to_json(r.ideal_degree_on_exceptional)},
          {"stacky_point_order", r.stacky_point_order},
          {"section_twist", r.section_twist},
          {"schematic_exceptional", r.schematic_exceptional()}};
}

json mu_action_to_json(const MuActionReport& r) {
  json o = {{"ell", r.ell},
            {"trivial", r.trivial},
            {"extends", r.extends},
            {"faithful_on_exceptional", r.faithful_on_exceptional},
            {"cyclic_stabilizers", r.cyclic_stabilizers},
            {"stabilizer_order_bound", r.stabilizer_order_bound},
            {"exceptional_schematic_before_quotient", r.exceptional_schematic_before_quotient}};
  o["fixed_points"] = r.fixed_points ? json(*r.fixed_points) : json(nullptr);
  return o;
}

json resolution_to_json(const AnResolution& r) {
  json trace = json::array();
  for (const auto& s : r.trace) trace.push_back(sing_json(s));
  return {{"iterations", r.iterations}, {"total_exceptional", r.total_exceptional}, {"trace", trace}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace stackydeg
