#include <doctest.h>

#include "sdtk/pattern.hpp"

using namespace sdtk;

namespace {

Elem z(int n) { return Elem{{n}}; }

Pattern word(const std::vector<int>& coords, const std::vector<int>& vals) {
  auto Z = Group::integers();
  std::vector<Elem> sup;
  for (int c : coords) sup.push_back(z(c));
  return Pattern(Z, Alphabet::numeric(2), ElemSet(Z, sup), vals);
}

}  // namespace

TEST_CASE("pattern basics") {
  Pattern p = word({0, 1, 2}, {1, 0, 1});
  CHECK(p.at(z(1)) == 0);
  CHECK_FALSE(p.maybe_at(z(5)).has_value());
  CHECK_THROWS(p.at(z(5)));
  CHECK(p.size() == 3);
}

TEST_CASE("translate uses the left action") {
  Pattern p = word({0, 1}, {1, 0});
  Pattern q = translate(z(3), p);
  CHECK(q.support().contains(z(3)));
  CHECK(q.at(z(3)) == 1);
  CHECK(q.at(z(4)) == 0);
}

TEST_CASE("concat agrees or reports the conflict") {
  Pattern p = word({0, 1}, {1, 0});
  Pattern q = word({1, 2}, {0, 1});
  auto ok = concat(p, q);
  REQUIRE(ok.pattern.has_value());
  CHECK(ok.pattern->size() == 3);
  CHECK(ok.pattern->at(z(2)) == 1);

  Pattern r = word({1, 2}, {1, 1});
  auto bad = concat(p, r);
  CHECK_FALSE(bad.pattern.has_value());
  CHECK(bad.conflict_point == z(1));
}

TEST_CASE("overlap is vacuously true off the support") {
  Pattern p = word({0, 1}, {1, 0});
  CHECK(is_g_overlapping(p, z(5)));  // supports disjoint
  CHECK_FALSE(is_g_overlapping(p, z(1)));
  CHECK(overlap_disagreement(p, z(1)) == z(1));
  Pattern c = word({0, 1, 2}, {1, 1, 1});
  CHECK(is_g_overlapping(c, z(1)));
}

TEST_CASE("restriction and subpatterns") {
  Pattern p = word({0, 1, 2}, {1, 0, 1});
  auto Z = p.group();
  Pattern r = restrict(p, ElemSet(Z, {z(0), z(2)}));
  CHECK(r.size() == 2);
  CHECK(is_subpattern(r, p));
  CHECK_FALSE(is_subpattern(word({0}, {0}), p));
}

TEST_CASE("pattern JSON round trip") {
  Pattern p = word({-1, 1}, {0, 1});
  Pattern back = Pattern::from_json(p.group(), p.alphabet(), p.to_json());
  CHECK(back == p);
}

TEST_CASE("alphabet lookups") {
  auto a = Alphabet::numeric(3);
  CHECK(a->size() == 3);
  CHECK(a->symbol(2) == "2");
  CHECK(a->index_of("1") == 1);
  CHECK_THROWS(a->index_of("x"));
}
