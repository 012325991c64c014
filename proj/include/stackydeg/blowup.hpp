#pragma once

// Numerical calculus of (m,d)-twisted blow-ups and of A-type surface
// singularities xy = z^a carrying a balanced mu_k action.

#include "stackydeg/field.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace stackydeg {

class BlowupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Blow up (pi^{md}, y), then take the d-th root of the exceptional divisor.
struct BlowupParams {
  int m = 1;
  int d = 1;
};

struct BlowupResult {
  Rat exceptional_self_intersection;  ///< -1/(md)
  Rat ideal_degree_on_exceptional;    ///< 1/d
  int stacky_point_order = 1;         ///< d; 1 means the exceptional is schematic
  int section_twist = 0;              ///< the ideal restricts to O(-m p) on the section
  bool schematic_exceptional() const { return stacky_point_order == 1; }
};

BlowupResult twisted_blowup(const BlowupParams& p);

/// Certified containment (pi^{mk}, y^{ceil(k/d)}) in b_* I^k: true for every
/// monomial when k <= 0. A `false` means "not certified", not "not contained".
bool pushforward_contains(const BlowupParams& p, int k, int a_pi, int a_y);

struct MuActionReport {
  int ell = 1;
  bool trivial = true;
  bool extends = true;
  bool faithful_on_exceptional = false;
  /// Fixed points on the exceptional divisor; empty when the action is trivial.
  std::optional<int> fixed_points;
  bool cyclic_stabilizers = true;
  /// All stabilizers of the quotient are subgroups of mu_{ell*d}.
  int stabilizer_order_bound = 1;
  /// The exceptional divisor is schematic before taking the quotient (d = 1).
  bool exceptional_schematic_before_quotient = false;
};

MuActionReport mu_action_on_blowup(int ell, const BlowupParams& p);

/// Coarse singularity xy = z^a (type A_{a-1}); a = 1 is a smooth point.
/// mu_order is the order of the cyclic stabilizer acting in a balanced way.
struct AnSing {
  int a = 1;
  int mu_order = 1;
  bool is_smooth() const { return a == 1; }
  friend bool operator==(const AnSing&, const AnSing&) = default;
};

struct AnStep {
  AnSing remainder;
  int exceptional_count = 0;
};

/// One blow-up of the singular point: xy = z^a becomes xy = z^{a-2} in the
/// central chart. Smooth remainders are normalized to a = 1.
AnStep an_blowup_step(const AnSing& s);

struct AnResolution {
  int iterations = 0;
  int total_exceptional = 0;
  std::vector<AnSing> trace;  ///< singularity before each step, then the final one
};

AnResolution resolve_An(const AnSing& s);

/// Contracting a stacky P^1 through two points of stack types A_{m-1} and
/// A_{n-1} (fields a = m, a = n), both with stabilizer mu_k, produces a coarse
/// A_{k(m+n)-1} point with stabilizer mu_k.
AnSing contract_singularity(const AnSing& p, const AnSing& q, int k);

/// deg(omega_C(Diff)) = -2 + (1 - 1/km) + (1 - 1/kn).
Rat different_degree(int km, int kn);

}  // namespace stackydeg
