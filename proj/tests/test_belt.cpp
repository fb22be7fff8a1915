#include <doctest.h>

#include "sdtk/belt.hpp"

using namespace sdtk;

namespace {

Elem z(int n) { return Elem{{n}}; }

ToyBeltSpec toy() {
  return ToyBeltSpec::make(Group::integers(), Alphabet::numeric(2),
                           {z(-1), z(1)}, 1);
}

// cells 1..3 form a straight belt, cells -1,0 and 4,5 are blank
Pattern segment_window(const ToyBeltSpec& spec) {
  int pm = spec.pointer_index(z(-1));
  int pp = spec.pointer_index(z(1));
  std::vector<Elem> sup;
  for (int i = -1; i <= 5; ++i) sup.push_back(z(i));
  int nb = spec.belt_count();
  std::vector<int> vals = {nb, nb, spec.encode(pm, pp, 1, 0),
                           spec.encode(pm, pp, 0, 0),
                           spec.encode(pm, pp, 1, 0), nb, nb};
  return Pattern(spec.group, spec.belt_alpha, ElemSet(spec.group, sup),
                 vals);
}

}  // namespace

TEST_CASE("belt alphabet encoding") {
  auto spec = toy();
  CHECK(spec.belt_count() == 16);
  CHECK(spec.belt_alpha->size() == 17);
  int c = spec.encode(0, 1, 1, 0);
  CHECK(spec.is_belt(c));
  CHECK_FALSE(spec.is_belt(16));
  CHECK(spec.back(c) == z(-1));
  CHECK(spec.fwd(c) == z(1));
  CHECK(spec.top(c) == 1);
  CHECK(spec.bot(c) == 0);
  CHECK(spec.max_pointer_length() == 1);
}

TEST_CASE("consistency verdicts") {
  auto spec = toy();
  Pattern w = segment_window(spec);
  CHECK(forward_consistent(spec, w, z(1)) == Tri::True);
  CHECK(forward_consistent(spec, w, z(3)) == Tri::False);  // blank ahead
  CHECK(backward_consistent(spec, w, z(1)) == Tri::False);
  CHECK(forward_consistent(spec, w, z(0)) == Tri::False);  // blank cell
  CHECK(forward_consistent(spec, w, z(9)) == Tri::Edge);
}

TEST_CASE("segment orbit walks the top then the bottom") {
  auto spec = toy();
  Pattern w = segment_window(spec);
  auto orbit = orbit_classify(spec, w, BeltState{z(1), true});
  CHECK(orbit.label == "segment");
  CHECK(orbit.length == 6);
  CHECK(orbit.turns == 2);
  for (const auto& s : orbit.states) {
    CHECK(inverse_step(spec, w, belt_step(spec, w, s)) == s);
    CHECK(belt_step(spec, w, inverse_step(spec, w, s)) == s);
  }
  // same orbit from a bottom state
  auto again = orbit_classify(spec, w, BeltState{z(2), false});
  CHECK(again.label == "segment");
  CHECK(again.length == 6);
}

TEST_CASE("blank cells are two-cycles") {
  auto spec = toy();
  Pattern w = segment_window(spec);
  auto orbit = orbit_classify(spec, w, BeltState{z(0), true});
  CHECK(orbit.label == "segment");
  CHECK(orbit.length == 2);
  CHECK(orbit.turns == 2);
}

TEST_CASE("truncated orbits report the window edge") {
  auto spec = toy();
  int pm = spec.pointer_index(z(-1));
  int pp = spec.pointer_index(z(1));
  std::vector<Elem> sup;
  for (int i = 0; i <= 2; ++i) sup.push_back(z(i));
  std::vector<int> vals(3, spec.encode(pm, pp, 0, 0));
  Pattern w(spec.group, spec.belt_alpha, ElemSet(spec.group, sup), vals);
  auto orbit = orbit_classify(spec, w, BeltState{z(1), true});
  CHECK(orbit.label == "exceeds-window");
  CHECK_THROWS_AS(belt_step(spec, w, BeltState{z(2), true}), WindowEdge);
}

TEST_CASE("trace reads the active track") {
  auto spec = toy();
  Pattern w = segment_window(spec);
  std::vector<Elem> pos;
  for (int i = 0; i <= 5; ++i) pos.push_back(z(i));
  Pattern tr = trace(spec, w, z(1), true, ElemSet(Group::integers(), pos));
  // tops 1,0,1 along the belt, then bottoms 0,0,0 after the turn
  CHECK(tr.values() == std::vector<int>{1, 0, 1, 0, 0, 0});
}

TEST_CASE("psi embeds track automorphisms") {
  auto spec = toy();
  auto Z = spec.group;
  auto A = Alphabet::numeric(2);
  auto psi_id = psi_toy(spec, LocalRule::identity(Z, A));
  CHECK(equals_as_tables(psi_id,
                         LocalRule::identity(Z, spec.belt_alpha))
            .equal);

  LocalRule sigma(Z, A, A, ElemSet(Z, {z(1)}), std::vector<int>{0, 1});
  LocalRule sigma2(Z, A, A, ElemSet(Z, {z(2)}), std::vector<int>{0, 1});
  auto lhs = compose(psi_toy(spec, sigma), psi_toy(spec, sigma));
  auto rhs = psi_toy(spec, sigma2, 1u << 21);
  CHECK(equals_as_tables(lhs, rhs, 1u << 25).equal);
}

TEST_CASE("injectivity witness distinguishes distinct rules") {
  auto spec = toy();
  auto Z = spec.group;
  auto A = Alphabet::numeric(2);
  LocalRule flip(Z, A, A, ElemSet(Z, {z(0)}), std::vector<int>{1, 0});
  LocalRule sigma(Z, A, A, ElemSet(Z, {z(1)}), std::vector<int>{0, 1});
  auto wit = toy_injectivity_witness(spec, flip, compose(sigma, flip));
  REQUIRE(wit.has_value());
  CHECK(wit->out1 != wit->out2);
  CHECK_FALSE(toy_injectivity_witness(spec, flip, flip).has_value());
}

TEST_CASE("multi-track egg belt encoding") {
  auto F1 = Group::free_group(1);
  auto enc = EggBeltEncoding::make(F1, 1, {Elem{{-1}}, Elem{{1}}},
                                   Alphabet::numeric(2), 3);
  CHECK(enc.belt_count() == 16);
  CHECK(enc.model_alpha->size() == 20);
  CHECK(enc.star_symbol() == 19);
  int e = enc.encode({0, 1}, {0, 1});
  CHECK(enc.back(e, 1) == Elem{{-1}});
  CHECK(enc.fwd(e, 1) == Elem{{1}});
  CHECK(enc.track_value(e, {true}) == 1);
  CHECK(enc.track_value(e, {false}) == 0);
}

TEST_CASE("egg-belt steps on a free-group line") {
  auto F1 = Group::free_group(1);
  auto enc = EggBeltEncoding::make(F1, 1, {Elem{{-1}}, Elem{{1}}},
                                   Alphabet::numeric(2), 0);
  int cell = enc.encode({0, 1}, {0, 1});
  std::vector<Elem> sup;
  for (int i = -2; i <= 2; ++i) {
    Elem e;
    for (int j = 0; j < std::abs(i); ++j)
      e.c.push_back(i > 0 ? 1 : -1);
    sup.push_back(e);
  }
  Pattern w(F1, enc.model_alpha, ElemSet(F1, sup),
            std::vector<int>(5, cell));
  EggBeltState s{F1->identity(), {true}};
  auto next = egg_belt_step(enc, w, s, 1);
  CHECK(next.pos == Elem{{1}});
  CHECK(egg_inverse_step(enc, w, next, 1) == s);

  auto psi = psi_egg(enc, LocalRule::identity(F1, Alphabet::numeric(2)));
  CHECK(equals_as_tables(psi, LocalRule::identity(F1, enc.model_alpha))
            .equal);
}

TEST_CASE("fat embedding constants in the free group") {
  auto F2 = Group::free_group(2);
  auto res = fat_free_group(F2, F2->ball(1), {Elem{{1}}, Elem{{2}}}, 6, 2);
  CHECK(res.n0 == 3);
  CHECK(res.conclusive);
  CHECK(res.disjoint);
  CHECK(res.gammas[0] == Elem{{1, 1, 1}});
  CHECK(res.gammas[1] == Elem{{2, 2, 2}});

  // translates of a fat set by short powers do collide
  auto fat = fat_free_group(F2, F2->ball(1), {Elem{{1}}, Elem{{2}}}, 1, 2);
  CHECK(fat.n0 == 2);
  CHECK_FALSE(fat.conclusive);
}

TEST_CASE("belt spec JSON round trip") {
  auto spec = toy();
  auto back = ToyBeltSpec::from_json(spec.to_json());
  CHECK(back.belt_count() == spec.belt_count());
  CHECK(back.pointers == spec.pointers);
  CHECK(back.belt_alpha->symbols() == spec.belt_alpha->symbols());
}
