#include "gen.hpp"
#include "stackydeg/blowup.hpp"

#include <doctest.h>

using namespace stackydeg;

TEST_CASE("twisted blow-up data") {
  auto r = twisted_blowup({2, 3});
  CHECK(r.exceptional_self_intersection == make_rat(-1, 6));
  CHECK(r.ideal_degree_on_exceptional == make_rat(1, 3));
  CHECK(r.stacky_point_order == 3);
  CHECK(r.section_twist == -2);

  r = twisted_blowup({1, 1});
  CHECK(r.exceptional_self_intersection == -1);
  CHECK(r.ideal_degree_on_exceptional == 1);
  CHECK(r.schematic_exceptional());
  CHECK(r.section_twist == -1);

  r = twisted_blowup({5, 2});
  CHECK(r.exceptional_self_intersection == make_rat(-1, 10));
  CHECK(r.ideal_degree_on_exceptional == make_rat(1, 2));
  CHECK(r.stacky_point_order == 2);
  CHECK(r.section_twist == -5);

  CHECK_THROWS_AS(twisted_blowup({0, 1}), BlowupError);
  CHECK_THROWS_AS(twisted_blowup({1, 0}), BlowupError);

  for (int m = 1; m <= 6; ++m)
    for (int d = 1; d <= 6; ++d) {
      auto b = twisted_blowup({m, d});
      CHECK(b.ideal_degree_on_exceptional * d == 1);
      CHECK(b.exceptional_self_intersection * m * d == -1);
    }
}

TEST_CASE("pushforward containment") {
  CHECK(pushforward_contains({2, 3}, 0, 0, 0));
  CHECK(pushforward_contains({2, 3}, -4, 0, 0));
  CHECK(pushforward_contains({1, 3}, 3, 0, 1));
  CHECK_FALSE(pushforward_contains({1, 3}, 3, 2, 0));
  CHECK(pushforward_contains({1, 3}, 3, 3, 0));
}

TEST_CASE("pushforward containment is monotone and matches the ideal oracle") {
  for (int m = 1; m <= 4; ++m)
    for (int d = 1; d <= 4; ++d)
      for (int k = -1; k <= 4; ++k)
        for (int a = 0; a <= 12; ++a)
          for (int b = 0; b <= 12; ++b) {
            const bool in = pushforward_contains({m, d}, k, a, b);
            if (in) {
              CHECK(pushforward_contains({m, d}, k, a + 1, b));
              CHECK(pushforward_contains({m, d}, k, a, b + 1));
            }
            if (k > 0) {
              const int c = (k + d - 1) / d;
              CHECK(in == gen::monomial_ideal_member({{m * k, 0}, {0, c}}, a, b, 40));
            }
          }
}

TEST_CASE("mu action report") {
  auto r = mu_action_on_blowup(1, {1, 2});
  CHECK(r.trivial);
  CHECK_FALSE(r.fixed_points.has_value());
  CHECK(r.stabilizer_order_bound == 2);

  r = mu_action_on_blowup(2, {1, 2});
  CHECK(r.extends);
  CHECK(r.faithful_on_exceptional);
  CHECK(r.fixed_points == 2);
  CHECK(r.cyclic_stabilizers);
  CHECK(r.stabilizer_order_bound == 4);

  r = mu_action_on_blowup(3, {2, 1});
  CHECK(r.exceptional_schematic_before_quotient);
  CHECK(r.stabilizer_order_bound == 3);
  CHECK_THROWS_AS(mu_action_on_blowup(0, {1, 1}), BlowupError);
}

TEST_CASE("A-type blow-up steps") {
  auto s = an_blowup_step({2, 1});
  CHECK(s.remainder.is_smooth());
  CHECK(s.exceptional_count == 1);
  s = an_blowup_step({3, 1});
  CHECK(s.remainder == AnSing{1, 1});
  CHECK(s.exceptional_count == 2);
  s = an_blowup_step({6, 2});
  CHECK(s.remainder == AnSing{4, 2});
  CHECK(s.exceptional_count == 2);
  CHECK_THROWS_AS(an_blowup_step({1, 1}), BlowupError);
}

TEST_CASE("A-type resolution") {
  auto r = resolve_An({2, 1});
  CHECK(r.iterations == 1);
  CHECK(r.total_exceptional == 1);
  r = resolve_An({4, 1});
  CHECK(r.iterations == 2);
  CHECK(r.total_exceptional == 3);
  r = resolve_An({1, 1});
  CHECK(r.iterations == 0);
  CHECK(r.total_exceptional == 0);

  // count(a) = step count + count(a - 2)
  std::vector<int> count(65, 0);
  for (int a = 2; a <= 64; ++a) count[a] = (a >= 3 ? 2 : 1) + (a >= 3 ? count[std::max(a - 2, 1)] : 0);
  for (int a = 1; a <= 64; ++a) {
    auto res = resolve_An({a, 1});
    CHECK(res.total_exceptional == a - 1);
    CHECK(res.total_exceptional == count[a]);
    CHECK(res.iterations == a / 2);
  }
}

TEST_CASE("contraction formulas") {
  CHECK(contract_singularity({1, 1}, {1, 1}, 1) == AnSing{2, 1});
  CHECK(contract_singularity({1, 2}, {1, 2}, 2) == AnSing{4, 2});
  CHECK(contract_singularity({2, 2}, {3, 2}, 2) == AnSing{10, 2});
  CHECK_THROWS_AS(contract_singularity({1, 2}, {1, 3}, 2), BlowupError);
  for (int k = 1; k <= 4; ++k)
    for (int m = 1; m <= 4; ++m)
      for (int n = 1; n <= 4; ++n) {
        auto c = contract_singularity({m, k}, {n, k}, k);
        CHECK(resolve_An(c).total_exceptional == k * m + k * n - 1);
      }
}

TEST_CASE("degree of the different") {
  CHECK(different_degree(2, 2) == -1);
  CHECK(different_degree(1, 1) == -2);
  CHECK(different_degree(2, 3) == make_rat(-5, 6));
  for (int a = 2; a <= 12; ++a)
    for (int b = 2; b <= 12; ++b) CHECK(different_degree(a, b) >= -1);
}
