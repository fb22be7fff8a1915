#include <doctest.h>

#include "sdtk/marker.hpp"

using namespace sdtk;

namespace {

Elem z(int n) { return Elem{{n}}; }

SubshiftSpec golden_mean() {
  SubshiftSpec spec;
  spec.group = Group::integers();
  spec.alphabet = Alphabet::numeric(2);
  spec.kind = SubshiftKind::Sft;
  spec.forbidden.push_back(Pattern(spec.group, spec.alphabet,
                                   ElemSet(spec.group, {z(0), z(1)}),
                                   {1, 1}));
  return spec;
}

SubshiftSpec full2() {
  SubshiftSpec spec;
  spec.group = Group::integers();
  spec.alphabet = Alphabet::numeric(2);
  return spec;
}

MarkerProblem problem(SubshiftSpec spec, int w_radius) {
  LanguageOracle o{std::move(spec)};
  auto g = o.spec.group;
  return MarkerProblem::make(std::move(o), ElemSet(g, {z(0)}),
                             g->ball(w_radius));
}

Pattern on_ring(const MarkerProblem& pr, const std::vector<int>& vals) {
  auto g = pr.oracle.spec.group;
  return Pattern(g, pr.oracle.spec.alphabet, pr.W.set_minus(pr.Y), vals);
}

}  // namespace

TEST_CASE("verify produces a revalidating certificate") {
  auto pr = problem(full2(), 2);
  auto res = verify_marker(pr, on_ring(pr, {0, 0, 1, 0}));
  REQUIRE(res.certificate.has_value());
  CHECK(res.certificate->witnesses.size() == 4);  // g in {-2,-1,1,2}
  CHECK(res.certificate->revalidate(pr.oracle.spec.group));

  auto constant = verify_marker(pr, on_ring(pr, {0, 0, 0, 0}));
  CHECK_FALSE(constant.certificate.has_value());
  REQUIRE(constant.overlapping_g.has_value());
}

TEST_CASE("verify rejects malformed input") {
  auto pr = problem(golden_mean(), 2);
  auto g = pr.oracle.spec.group;
  Pattern wrong_support(g, pr.oracle.spec.alphabet,
                        ElemSet(g, {z(0), z(1)}), {0, 1});
  CHECK_THROWS_AS(verify_marker(pr, wrong_support), std::invalid_argument);
  CHECK_THROWS_AS(verify_marker(pr, on_ring(pr, {1, 1, 1, 1})),
                  std::invalid_argument);  // contains the forbidden word
}

TEST_CASE("lexicographic search finds the first marker") {
  auto pr = problem(full2(), 2);
  auto res = search_marker(pr, SearchOptions{});
  REQUIRE(res.found.has_value());
  CHECK(res.found->pattern.values() == std::vector<int>{0, 0, 1, 0});

  SearchOptions threaded;
  threaded.workers = 4;
  auto par = search_marker(pr, threaded);
  REQUIRE(par.found.has_value());
  CHECK(par.found->pattern == res.found->pattern);
}

TEST_CASE("radius-one window admits no marker") {
  auto pr = problem(full2(), 1);
  auto res = search_marker(pr, SearchOptions{});
  CHECK_FALSE(res.found.has_value());
  CHECK(res.exhaustive);
  CHECK(res.tried == 4);
}

TEST_CASE("random search is deterministic per seed") {
  auto pr = problem(full2(), 2);
  SearchOptions opts;
  opts.strategy = SearchStrategy::Random;
  opts.seed = 12345;
  opts.trials = 64;
  auto a = search_marker(pr, opts);
  auto b = search_marker(pr, opts);
  REQUIRE(a.found.has_value());
  REQUIRE(b.found.has_value());
  CHECK(a.found->pattern == b.found->pattern);
  CHECK(a.tried == b.tried);
}

TEST_CASE("completion to a smaller core") {
  auto pr = problem(full2(), 2);
  Pattern p = on_ring(pr, {0, 0, 1, 0});
  auto g = pr.oracle.spec.group;
  // shrink Y to the empty set: q fills the hole at 0
  Pattern q(g, pr.oracle.spec.alphabet, g->ball(2), {0, 0, 0, 1, 0});
  auto res = complete_marker(pr, p, ElemSet(g, std::vector<Elem>{}), q);
  CHECK(res.certificate.has_value());
}

TEST_CASE("feasibility conditions and minimal radii") {
  LanguageOracle o{full2()};
  ElemSet K(o.spec.group, {z(0)});
  auto r4 = feasibility_conditions(o, K, 1, 4);
  CHECK_FALSE(r4.size_condition);
  auto r5 = feasibility_conditions(o, K, 1, 5);
  CHECK(r5.size_condition);
  CHECK(r5.diameter_condition);
  CHECK_FALSE(r5.radius_condition);  // needs r > 18
  auto r19 = feasibility_conditions(o, K, 1, 19);
  CHECK(r19.verdict);
}

TEST_CASE("ball log2 counting") {
  CHECK(ball_log2_count(Group::integers(), 10) ==
        doctest::Approx(std::log2(21.0)));
  CHECK(ball_log2_count(Group::lattice(2), 2) ==
        doctest::Approx(std::log2(13.0)));
  CHECK(ball_log2_count(Group::free_group(2), 2) ==
        doctest::Approx(std::log2(17.0)));
}

TEST_CASE("language log2 estimates") {
  LanguageOracle o{golden_mean()};
  auto est = language_log2_count(o, o.spec.group->ball(2), std::nullopt);
  CHECK(est.log2_count == doctest::Approx(std::log2(13.0)));
  CHECK_FALSE(est.lower_bound);
}
