#include <doctest.h>

#include "sdtk/egg.hpp"

using namespace sdtk;

namespace {

Elem z(int n) { return Elem{{n}}; }

LanguageOracle full2() {
  SubshiftSpec spec;
  spec.group = Group::integers();
  spec.alphabet = Alphabet::numeric(2);
  return LanguageOracle{spec};
}

EggCollection two_eggs(const LanguageOracle& o) {
  return build_linear_eggs(o, ElemSet(o.spec.group, {z(0)}),
                           o.spec.group->ball(2));
}

Pattern window9(const LanguageOracle& o, int yolk) {
  auto g = o.spec.group;
  std::vector<Elem> sup;
  for (int i = -4; i <= 4; ++i) sup.push_back(z(i));
  // white 00.10 centered at 0, padding chosen to leave no second egg
  std::vector<int> vals = {1, 1, 0, 0, yolk, 1, 0, 1, 1};
  return Pattern(g, o.spec.alphabet, ElemSet(g, sup), vals);
}

}  // namespace

TEST_CASE("linear construction on the full shift") {
  auto o = full2();
  auto E = two_eggs(o);
  CHECK(E.size() == 2);
  CHECK(E.white.values() == std::vector<int>{0, 0, 1, 0});
  CHECK(E.yolks[0].values() == std::vector<int>{0});
  CHECK(E.yolks[1].values() == std::vector<int>{1});
  CHECK(E.egg(1).at(z(0)) == 1);
  CHECK(E.egg(1).at(z(1)) == 1);
  auto res = verify_egg_collection(o, E, ExchangeMode::FullShift);
  CHECK(res.pass);
}

TEST_CASE("construction fails on trivial shifts") {
  SubshiftSpec spec;
  spec.group = Group::integers();
  spec.alphabet = Alphabet::numeric(2);
  spec.kind = SubshiftKind::Sft;
  spec.forbidden.push_back(Pattern(spec.group, spec.alphabet,
                                   ElemSet(spec.group, {z(0)}), {1}));
  LanguageOracle o{spec};
  CHECK_THROWS_AS(build_linear_eggs(o, ElemSet(spec.group, {z(0)}),
                                    spec.group->ball(2)),
                  std::invalid_argument);
}

TEST_CASE("realizes deduplicates restrictions") {
  auto o = full2();
  auto E = two_eggs(o);
  auto r = realizes(E, E.Y);
  CHECK(r.size() == 2);
  auto none = realizes(E, ElemSet(o.spec.group, std::vector<Elem>{}));
  CHECK(none.size() == 1);  // every yolk restricts to the empty pattern
}

TEST_CASE("egg detection factor") {
  auto o = full2();
  auto E = two_eggs(o);
  Pattern w = window9(o, 1);
  Pattern model = eta(E, w);
  CHECK(model.support() == o.spec.group->ball(2));
  CHECK(model.at(z(0)) == 1);  // egg with yolk value 1
  for (int i : {-2, -1, 1, 2}) CHECK(model.at(z(i)) == E.star_symbol());
}

TEST_CASE("yolk permutation rewrites only the yolk cell") {
  auto o = full2();
  auto E = two_eggs(o);
  auto swap = phi_sigma(E, {1, 0});
  Pattern w = window9(o, 0);
  Pattern out = apply(swap, w);
  CHECK(out.at(z(0)) == 1);  // yolk exchanged
  for (int i = -2; i <= 2; ++i)
    if (i != 0) CHECK(out.at(z(i)) == w.at(z(i)));

  auto id = phi_sigma(E, {0, 1});
  CHECK(equals_as_tables(id, LocalRule::identity(o.spec.group,
                                                 o.spec.alphabet))
            .equal);
  CHECK(equals_as_tables(compose(swap, swap),
                         LocalRule::identity(o.spec.group, o.spec.alphabet))
            .equal);
  CHECK_THROWS_AS(phi_sigma(E, {0, 0}), std::invalid_argument);
}

TEST_CASE("lifting the model swap matches the direct rule") {
  auto o = full2();
  auto E = two_eggs(o);
  auto model_alpha = E.model_alphabet();
  REQUIRE(model_alpha->size() == 3);
  // swap e0/e1, fix the star
  LocalRule model_swap(o.spec.group, model_alpha, model_alpha,
                       ElemSet(o.spec.group, {z(0)}),
                       std::vector<int>{1, 0, 2});
  auto lifted = lift_egg_automorphism(E, model_swap);
  CHECK(equals_as_tables(lifted, phi_sigma(E, {1, 0})).equal);

  LocalRule star_mover(o.spec.group, model_alpha, model_alpha,
                       ElemSet(o.spec.group, {z(0)}),
                       std::vector<int>{2, 0, 1});
  CHECK_THROWS_AS(lift_egg_automorphism(E, star_mover),
                  std::invalid_argument);
}

TEST_CASE("collection JSON round trip") {
  auto o = full2();
  auto E = two_eggs(o);
  auto back = EggCollection::from_json(o.spec.group, o.spec.alphabet,
                                       E.to_json());
  CHECK(back.white == E.white);
  CHECK(back.yolks == E.yolks);
  CHECK(back.Y == E.Y);
  CHECK(back.W == E.W);
}

TEST_CASE("strong-tmp verification needs the collar inside the window") {
  SubshiftSpec spec;
  spec.group = Group::integers();
  spec.alphabet = Alphabet::numeric(2);
  spec.kind = SubshiftKind::Sft;
  spec.forbidden.push_back(Pattern(spec.group, spec.alphabet,
                                   ElemSet(spec.group, {z(0), z(1)}),
                                   {1, 1}));
  spec.tmp_constant = spec.group->ball(1);
  LanguageOracle gm{spec};
  EggCollection E;
  E.Y = ElemSet(spec.group, {z(0)});
  E.W = spec.group->ball(3);
  E.fix = ElemSet(spec.group, {z(0)});
  E.white = Pattern(spec.group, spec.alphabet, E.W.set_minus(E.Y),
                    {0, 1, 0, 0, 0, 1});
  E.yolks = {Pattern(spec.group, spec.alphabet, E.Y, {0}),
             Pattern(spec.group, spec.alphabet, E.Y, {1})};
  CHECK(verify_egg_collection(gm, E, ExchangeMode::StrongTmp).pass);
  CHECK(verify_egg_collection(gm, E, ExchangeMode::Declared).pass);
}
