#include <doctest.h>

#include "sdtk/group.hpp"

using namespace sdtk;

namespace {
Elem z(int n) { return Elem{{n}}; }
}  // namespace

TEST_CASE("integer arithmetic and balls") {
  auto Z = Group::integers();
  CHECK(Z->mul(z(2), z(-5)) == z(-3));
  CHECK(Z->inv(z(7)) == z(-7));
  CHECK(Z->word_length(z(-4)) == 4);
  CHECK(Z->ball(2).size() == 5);
  CHECK(Z->ring(1, 3).elems() ==
        std::vector<Elem>{z(-3), z(-2), z(2), z(3)});
  CHECK_FALSE(Z->diameter().has_value());
  CHECK(Z->is_abelian());
}

TEST_CASE("lattice balls") {
  auto L = Group::lattice(2);
  CHECK(L->ball(1).size() == 5);
  CHECK(L->ball(2).size() == 13);
  Elem e{{1, -2}};
  CHECK(L->word_length(e) == 3);
  CHECK(L->mul(e, e) == Elem{{2, -4}});
}

TEST_CASE("free group reduction") {
  auto F2 = Group::free_group(2);
  Elem ab = F2->parse("ab");
  Elem Ba = F2->parse("Ba");
  CHECK(F2->mul(ab, Ba) == F2->parse("aa"));
  CHECK(F2->inv(ab) == F2->parse("BA"));
  CHECK(F2->ball(1).size() == 5);
  CHECK(F2->ball(2).size() == 17);
  CHECK(F2->format(F2->parse("aBa")) == "aBa");
  CHECK_FALSE(F2->is_abelian());
  CHECK(F2->is_central(F2->identity()));
  CHECK_FALSE(F2->is_central(F2->parse("a")));
}

TEST_CASE("finite table groups") {
  // cyclic group of order 3
  auto C3 = Group::finite_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {1});
  CHECK(C3->mul(z(1), z(2)) == z(0));
  CHECK(C3->inv(z(1)) == z(2));
  CHECK(C3->diameter() == 1);
  CHECK(C3->ball(5).size() == 3);
  CHECK(C3->is_abelian());
  CHECK(C3->is_central(z(1)));

  CHECK_THROWS_AS(
      Group::finite_table({{0, 1}, {1, 1}}, {1}),
      std::invalid_argument);
}

TEST_CASE("product groups") {
  auto P = Group::product(Group::integers(), Group::integers());
  Elem e{{1, 2, 3}};  // (2, 3)
  CHECK(P->mul(e, e) == Elem{{1, 4, 6}});
  CHECK(P->word_length(e) == 5);
  CHECK(P->ball(1).size() == 5);
  CHECK(P->format(e) == "(2,3)");
}

TEST_CASE("set algebra") {
  auto Z = Group::integers();
  ElemSet a(Z, {z(0), z(1)});
  ElemSet b(Z, {z(1), z(2)});
  CHECK(set_product(a, b).elems() ==
        std::vector<Elem>{z(1), z(2), z(3)});
  CHECK(set_inverse(b).elems() == std::vector<Elem>{z(-2), z(-1)});
  CHECK(translate_set(z(5), a).elems() == std::vector<Elem>{z(5), z(6)});
  CHECK(a.set_union(b).size() == 3);
  CHECK(a.set_intersect(b).elems() == std::vector<Elem>{z(1)});
  CHECK(a.set_minus(b).elems() == std::vector<Elem>{z(0)});

  ElemSet far(Z, {z(10)});
  CHECK(is_k_disjoint({a, far}, Z->ball(1)));
  CHECK_FALSE(is_k_disjoint({a, b}, Z->ball(1)));
}

TEST_CASE("set expression grammar") {
  auto Z = Group::integers();
  CHECK(parse_set_expr(Z, "B(2)") == Z->ball(2));
  CHECK(parse_set_expr(Z, "ring(1,3)") == Z->ring(1, 3));
  CHECK(parse_set_expr(Z, "[0, 3]").elems() ==
        std::vector<Elem>{z(0), z(3)});
  CHECK_THROWS_AS(parse_set_expr(Z, "nope"), std::invalid_argument);
}

TEST_CASE("ball budget") {
  auto F2 = Group::free_group(2);
  CHECK_THROWS_AS(F2->ball(20, 1000), BudgetExceeded);
}

TEST_CASE("group JSON round trip") {
  for (const auto& g :
       {Group::integers(), Group::lattice(3), Group::free_group(2),
        Group::product(Group::integers(), Group::free_group(1))}) {
    auto back = Group::from_json(g->to_json());
    CHECK(back->same_group(*g));
    Elem e = g->generators().front();
    CHECK(back->elem_from_json(g->elem_to_json(e)) == e);
  }
}
