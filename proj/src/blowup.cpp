#include "stackydeg/blowup.hpp"

#include <string>

namespace stackydeg {

namespace {
void check_params(const BlowupParams& p) {
  if (p.m < 1 || p.d < 1)
    throw BlowupError("twisted blow-up needs m >= 1 and d >= 1 (got m=" + std::to_string(p.m) +
                      ", d=" + std::to_string(p.d) + ")");
}
}  // namespace

BlowupResult twisted_blowup(const BlowupParams& p) {
  check_params(p);
  BlowupResult r;
  r.exceptional_self_intersection = Rat(-1, p.m * p.d);
  r.exceptional_self_intersection.canonicalize();
  r.ideal_degree_on_exceptional = Rat(1, p.d);
  r.ideal_degree_on_exceptional.canonicalize();
  r.stacky_point_order = p.d;
  r.section_twist = -p.m;
  return r;
}

bool pushforward_contains(const BlowupParams& p, int k, int a_pi, int a_y) {
  if (k <= 0) return true;
  check_params(p);
  const long need_pi = static_cast<long>(p.m) * k;
  const long need_y = (k + p.d - 1) / p.d;
  return a_pi >= need_pi || a_y >= need_y;
}

MuActionReport mu_action_on_blowup(int ell, const BlowupParams& p) {
  if (ell < 1) throw BlowupError("mu_ell needs ell >= 1");
  check_params(p);
  MuActionReport r;
  r.ell = ell;
  r.trivial = ell == 1;
  r.faithful_on_exceptional = ell > 1;
  // The stacky point and the point where the exceptional meets the section.
  if (!r.trivial) r.fixed_points = 2;
  r.stabilizer_order_bound = ell * p.d;
  r.exceptional_schematic_before_quotient = p.d == 1;
  return r;
}

AnStep an_blowup_step(const AnSing& s) {
  if (s.a < 2) throw BlowupError("an_blowup_step needs a singular point (a >= 2)");
  AnStep step;
  step.remainder = {std::max(s.a - 2, 1), s.mu_order};
  step.exceptional_count = s.a >= 3 ? 2 : 1;
  return step;
}

AnResolution resolve_An(const AnSing& s) {
  if (s.a < 1) throw BlowupError("A-type index must be >= 1");
  AnResolution res;
  AnSing cur = s;
  while (!cur.is_smooth()) {
    res.trace.push_back(cur);
    AnStep step = an_blowup_step(cur);
    res.total_exceptional += step.exceptional_count;
    ++res.iterations;
    cur = step.remainder;
  }
  res.trace.push_back(cur);
  return res;
}

AnSing contract_singularity(const AnSing& p, const AnSing& q, int k) {
  if (k < 1) throw BlowupError("stabilizer order must be >= 1");
  if (p.a < 1 || q.a < 1) throw BlowupError("A-type index must be >= 1");
  if (p.mu_order != q.mu_order || p.mu_order != k)
    throw BlowupError("contraction needs both points to carry the same stabilizer mu_" +
                      std::to_string(k) + " (got mu_" + std::to_string(p.mu_order) + " and mu_" +
                      std::to_string(q.mu_order) + ")");
  return {k * (p.a + q.a), k};
}

Rat different_degree(int km, int kn) {
  if (km < 1 || kn < 1) throw BlowupError("different_degree needs km, kn >= 1");
  Rat r = Rat(-2) + (Rat(1) - Rat(1, km)) + (Rat(1) - Rat(1, kn));
  r.canonicalize();
  return r;
}

}  // namespace stackydeg
