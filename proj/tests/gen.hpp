#pragma once

// Random generators and independent oracles shared by the property tests
// and the acceptance runner.

#include "stackydeg/engine.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace gen {

using namespace stackydeg;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rat small_rat(Rng& rng, int span = 5) {
  Rat r(uniform(rng, -span, span), static_cast<unsigned long>(uniform(rng, 1, 4)));
  r.canonicalize();
  return r;
}

inline Poly poly(Rng& rng, int max_deg, int min_order = 0) {
  const int deg = uniform(rng, min_order, std::max(min_order, max_deg));
  std::vector<Rat> c(static_cast<std::size_t>(deg) + 1, Rat(0));
  for (int i = min_order; i <= deg; ++i) c[static_cast<std::size_t>(i)] = small_rat(rng);
  if (c.back() == 0) c.back() = Rat(1);
  return Poly(std::move(c));
}

/// Entries with numerator and denominator degree <= max_deg; may be zero.
inline RatFunc ratfunc(Rng& rng, int max_deg = 4) {
  if (uniform(rng, 0, 7) == 0) return RatFunc(0L);
  Poly den = poly(rng, max_deg);
  if (den.coeffs().empty()) den = Poly(Rat(1));
  return RatFunc(poly(rng, max_deg), den);
}

/// A unit of the local ring: value at 0 is non-zero, no pole at 0.
inline RatFunc unit(Rng& rng, int max_deg = 2) {
  for (;;) {
    Poly num = poly(rng, max_deg);
    Poly den = poly(rng, max_deg);
    if (num.coeffs().empty() || den.coeffs().empty()) continue;
    if (num.coeffs()[0] == 0 || den.coeffs()[0] == 0) continue;
    return RatFunc(num, den);
  }
}

/// Element of the local ring (possibly zero).
inline RatFunc regular(Rng& rng, int max_deg = 2) {
  if (uniform(rng, 0, 3) == 0) return RatFunc(0L);
  return RatFunc::t_pow(uniform(rng, 0, 2)) * unit(rng, max_deg);
}

/// Product of elementary operations over the local ring.
inline Mat unimodular(Rng& rng, std::size_t n, int steps = 3) {
  Mat u = Mat::identity(n);
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    const auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    switch (uniform(rng, 0, 2)) {
      case 0:
        u.scale_row(i, unit(rng, 1));
        break;
      case 1:
        if (i != j) u.add_row_multiple(i, j, regular(rng, 1));
        break;
      default:
        u.swap_rows(i, j);
    }
  }
  return u;
}

inline Mat random_invertible(Rng& rng, std::size_t n, int max_deg = 4) {
  for (;;) {
    std::vector<RatFunc> e;
    for (std::size_t i = 0; i < n * n; ++i) e.push_back(ratfunc(rng, max_deg));
    Mat m(n, n, std::move(e));
    if (!valuation_of_det(m).is_infinite()) return m;
  }
}

/// diag(u_i t^{v_i}) scrambled by unimodular matrices on both sides.
inline Mat gluing(Rng& rng, const std::vector<int>& vals) {
  const std::size_t n = vals.size();
  std::vector<RatFunc> d;
  for (int v : vals) d.push_back(RatFunc::t_pow(v) * unit(rng, 1));
  return unimodular(rng, n, 2) * Mat::diagonal(d) * unimodular(rng, n, 2);
}

// --- oracles ------------------------------------------------------------------

/// Determinant by Laplace expansion along the first row, written
/// independently of the library's elimination code.
inline RatFunc laplace_det(const std::vector<std::vector<RatFunc>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  RatFunc acc(0L);
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == RatFunc(0L)) continue;
    std::vector<std::vector<RatFunc>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<RatFunc> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    RatFunc term = a[0][c] * laplace_det(minor);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

/// Invariant-factor valuations from determinantal divisors: the minimal
/// valuation of the j x j minors is D_j, and the j-th factor is D_j - D_{j-1}.
inline std::vector<std::int64_t> invariant_factor_oracle(const Mat& a) {
  const std::size_t n = a.rows();
  std::int64_t ell = 0;
  for (const auto& e : a.entries())
    if (!(e == RatFunc(0L))) ell = std::max<std::int64_t>(ell, -val(e).value());
  const Mat s = RatFunc::t_pow(ell) * a;
  std::vector<std::int64_t> D{0};
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<bool> rsel(n, false), csel(n, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(j), true);
    Valuation best = Valuation::infinity();
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<long>(j), true);
      do {
        std::vector<std::vector<RatFunc>> minor;
        for (std::size_t r = 0; r < n; ++r) {
          if (!rsel[r]) continue;
          std::vector<RatFunc> row;
          for (std::size_t c = 0; c < n; ++c)
            if (csel[c]) row.push_back(s(r, c));
          minor.push_back(row);
        }
        best = std::min(best, val(laplace_det(minor)));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    D.push_back(best.value());
  }
  std::vector<std::int64_t> out;
  for (std::size_t j = 1; j <= n; ++j) out.push_back(D[j] - D[j - 1]);
  return out;
}

/// Genus from a union-find count of connected pieces: sum g + E - V + 1.
inline int genus_oracle(const TwistedCurve& c) {
  std::map<ComponentId, ComponentId> parent;
  for (const auto& k : c.components) parent[k.id] = k.id;
  auto find = [&](ComponentId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& n : c.nodes) parent[find(n.ends[0])] = find(n.ends[1]);
  int pieces = 0, g = 0;
  for (const auto& k : c.components) {
    pieces += find(k.id) == k.id;
    g += k.genus;
  }
  if (pieces != 1) return -1;
  return g + static_cast<int>(c.nodes.size()) - static_cast<int>(c.components.size()) + 1;
}

/// Membership of pi^a y^b in the monomial ideal generated by `gens`, by
/// marking every multiple of every generator inside a box.
/// Membership table of a monomial ideal in k[x,y], truncated to a box.
struct MonomialIdeal {
  int box;
  std::vector<std::vector<bool>> in;

  MonomialIdeal(const std::vector<std::pair<int, int>>& gens, int box_)
      : box(box_),
        in(static_cast<std::size_t>(box_) + 1, std::vector<bool>(static_cast<std::size_t>(box_) + 1, false)) {
    for (auto [ga, gb] : gens)
      for (int u = 0; ga + u <= box; ++u)
        for (int v = 0; gb + v <= box; ++v) in[ga + u][gb + v] = true;
  }
  bool contains(int a, int b) const { return in[a][b]; }
};

inline bool monomial_ideal_member(const std::vector<std::pair<int, int>>& gens, int a, int b, int box) {
  return MonomialIdeal(gens, box).contains(a, b);
}

// --- engine inputs ------------------------------------------------------------

inline Node make_node(NodeId id, ComponentId a, ComponentId b, int stab, bool persistent) {
  Node n;
  n.id = id;
  n.ends = {a, b};
  n.stab = stab;
  n.persistent = persistent;
  return n;
}

/// Connected graph whose components are all stable on their own; integer
/// degrees, random gluings at persistent nodes.
inline DegenerationInput stable_family(Rng& rng) {
  DegenerationInput in;
  const int nc = uniform(rng, 1, 6);
  const std::size_t nf = static_cast<std::size_t>(uniform(rng, 1, 3));
  for (int i = 0; i < nc; ++i) in.curve.components.push_back({i, uniform(rng, 0, 2)});
  NodeId next = 0;
  for (int i = 1; i < nc; ++i)
    in.curve.nodes.push_back(make_node(next++, uniform(rng, 0, i - 1), i, uniform(rng, 1, 3), false));
  const int extra = uniform(rng, 0, 3);
  for (int e = 0; e < extra; ++e)
    in.curve.nodes.push_back(
        make_node(next++, uniform(rng, 0, nc - 1), uniform(rng, 0, nc - 1), uniform(rng, 1, 3), false));
  for (auto& n : in.curve.nodes) {
    if (uniform(rng, 0, 1)) std::swap(n.ends[0], n.ends[1]);
    n.persistent = uniform(rng, 0, 2) != 0;
  }
  for (auto& c : in.curve.components) {
    const int branches = in.curve.node_branches(c.id);
    if (2 * c.genus - 2 + branches <= 0) c.genus = branches == 0 ? 2 : std::max(c.genus, 1);
  }
  if (uniform(rng, 0, 3) == 0) in.curve.markings.push_back({0, uniform(rng, 0, nc - 1), 1});

  in.multidegree = MultiDegree(nf);
  for (int i = 0; i < nc; ++i)
    for (std::size_t k = 0; k < nf; ++k) in.multidegree.set(k, i, Rat(uniform(rng, -3, 3)));
  for (std::size_t k = 0; k < nf; ++k) in.grading.d.push_back(uniform(rng, 1, 3));
  if (uniform(rng, 0, 3) == 0) {
    in.grading.weights.resize(nf);
    in.grading.weights[0] = std::vector<int>{uniform(rng, -3, 3), uniform(rng, -3, 3)};
  }
  for (const auto& n : in.curve.nodes) {
    if (!n.persistent) continue;
    std::vector<int> vals;
    for (std::size_t k = 0; k < nf; ++k) vals.push_back(uniform(rng, uniform(rng, 0, 4) ? 0 : -2, 5));
    in.gluing[n.id] = gluing(rng, vals);
  }
  return in;
}

/// A stable curve C' meeting a destabilizing stacky P^1 at a mu_k node and a
/// mu_{k'd} node, possibly with more stable components hanging off C'.
inline DegenerationInput bridge_family(Rng& rng) {
  const int k = uniform(rng, 1, 4);
  const int d = uniform(rng, 1, 4);
  const int kp = k / std::gcd(k, d - 1);
  DegenerationInput in;
  in.curve.components = {{0, uniform(rng, 1, 2)}, {1, 0}};
  in.curve.nodes = {make_node(0, 0, 1, k, true), make_node(1, 0, 1, kp * d, true)};
  if (uniform(rng, 0, 1)) std::swap(in.curve.nodes[1].ends[0], in.curve.nodes[1].ends[1]);
  in.multidegree = MultiDegree(1);
  Rat e(1, static_cast<unsigned long>(d * k));
  e.canonicalize();
  in.multidegree.set(0, 1, e);
  in.multidegree.set(0, 0, Rat(uniform(rng, -2, 2)) - e);
  const int tails = uniform(rng, 0, 2);
  for (int i = 0; i < tails; ++i) {
    const ComponentId c = 2 + i;
    in.curve.components.push_back({c, uniform(rng, 1, 2)});
    in.curve.nodes.push_back(make_node(2 + i, 0, c, uniform(rng, 1, 2), uniform(rng, 0, 1) == 1));
    in.multidegree.set(0, c, Rat(uniform(rng, -2, 2)));
  }
  in.grading.d = {d};
  in.extra_mu[0] = k;
  for (const auto& n : in.curve.nodes)
    if (n.persistent) in.gluing[n.id] = gluing(rng, {uniform(rng, -2, 5)});
  return in;
}

/// A stable curve with a mu_k self-node carrying the extra mu_k action.
inline DegenerationInput self_node_family(Rng& rng) {
  const int k = uniform(rng, 1, 4);
  DegenerationInput in;
  in.curve.components = {{0, uniform(rng, 1, 3)}};
  in.curve.nodes = {make_node(0, 0, 0, k, true)};
  in.multidegree = MultiDegree(1);
  in.multidegree.set(0, 0, Rat(uniform(rng, -2, 2)));
  in.grading.d = {uniform(rng, 1, 4)};
  in.gluing[0] = gluing(rng, {uniform(rng, 0, 5)});
  in.extra_mu[0] = k;
  return in;
}

inline DegenerationInput any_input(Rng& rng) {
  switch (uniform(rng, 0, 4)) {
    case 0: return bridge_family(rng);
    case 1: return self_node_family(rng);
    default: return stable_family(rng);
  }
}

}  // namespace gen
