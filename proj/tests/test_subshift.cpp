#include <doctest.h>

#include "sdtk/subshift.hpp"

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

ElemSet interval(const GroupPtr& g, int n) {
  std::vector<Elem> cells;
  for (int i = 0; i < n; ++i) cells.push_back(z(i));
  return ElemSet(g, cells);
}

}  // namespace

TEST_CASE("full shift language is everything") {
  SubshiftSpec spec;
  spec.group = Group::integers();
  spec.alphabet = Alphabet::numeric(3);
  LanguageOracle o{spec};
  auto res = language(o, interval(spec.group, 3));
  CHECK(res.patterns.size() == 27);
  CHECK(res.exactness == Exactness::Exact);
  CHECK(language_count(o, interval(spec.group, 4)) == 81);
}

TEST_CASE("golden mean counts are Fibonacci") {
  LanguageOracle o{golden_mean()};
  long long fib[] = {2, 3, 5, 8, 13, 21, 34, 55};
  for (int n = 1; n <= 8; ++n) {
    auto res = language(o, interval(o.spec.group, n));
    CHECK(res.exactness == Exactness::Exact);
    CHECK(static_cast<long long>(res.patterns.size()) == fib[n - 1]);
  }
}

TEST_CASE("local admissibility") {
  auto spec = golden_mean();
  Pattern bad(spec.group, spec.alphabet, interval(spec.group, 3),
              {0, 1, 1});
  Pattern good(spec.group, spec.alphabet, interval(spec.group, 3),
               {1, 0, 1});
  CHECK_FALSE(locally_admissible(spec, bad));
  CHECK(locally_admissible(spec, good));
}

TEST_CASE("strong irreducibility needs the full unit ball") {
  LanguageOracle o{golden_mean()};
  auto Z = o.spec.group;
  ElemSet ball2 = Z->ball(2);

  auto with_ball = check_strong_irreducibility(o, Z->ball(1), 1, ball2);
  CHECK(with_ball.pass);

  // {0,1} is not symmetric: p=q=1 on S={0}, T={-1} concatenates to the
  // forbidden word. An asymmetric constant does not separate.
  auto asym = check_strong_irreducibility(o, ElemSet(Z, {z(0), z(1)}), 1,
                                          ball2);
  CHECK_FALSE(asym.pass);
  CHECK(asym.details.contains("witness"));

  auto identity_only =
      check_strong_irreducibility(o, ElemSet(Z, {z(0)}), 1, ball2);
  CHECK_FALSE(identity_only.pass);
}

TEST_CASE("strong TMP at the unit ball") {
  LanguageOracle o{golden_mean()};
  auto res = check_strong_tmp(o, o.spec.group->ball(1), 2,
                              o.spec.group->ball(2));
  CHECK(res.pass);
}

TEST_CASE("growth lower bound") {
  LanguageOracle o{golden_mean()};
  auto res = language_growth_check(o, o.spec.group->ball(1),
                                   o.spec.group->ball(3));
  CHECK(res.pass);
  CHECK(res.details.contains("lhs"));
  CHECK(res.details.contains("rhs"));
}

TEST_CASE("restriction to the even subgroup") {
  LanguageOracle o{golden_mean()};
  SubgroupEmbedding emb;
  emb.H = Group::integers();
  emb.G = o.spec.group;
  emb.gen_images = {z(2)};
  auto restricted = restrict_subshift(o, emb);
  auto res = language(restricted, interval(emb.H, 2));
  // cells 0 and 2 of the ambient shift: all four words appear
  CHECK(res.patterns.size() == 4);
}

TEST_CASE("oracle subshifts have no computable language") {
  SubshiftSpec spec;
  spec.group = Group::integers();
  spec.alphabet = Alphabet::numeric(2);
  spec.kind = SubshiftKind::Oracle;
  LanguageOracle o{spec};
  CHECK_THROWS_AS(language(o, interval(spec.group, 1)),
                  std::invalid_argument);
}

TEST_CASE("trivial subshift detection") {
  SubshiftSpec spec;
  spec.group = Group::integers();
  spec.alphabet = Alphabet::numeric(2);
  spec.kind = SubshiftKind::Sft;
  spec.forbidden.push_back(Pattern(spec.group, spec.alphabet,
                                   ElemSet(spec.group, {z(0)}), {1}));
  LanguageOracle o{spec};
  CHECK(is_trivial_subshift(o));
  CHECK_FALSE(is_trivial_subshift(LanguageOracle{golden_mean()}));
}

TEST_CASE("fix subgroup") {
  SubshiftSpec full;
  full.group = Group::integers();
  full.alphabet = Alphabet::numeric(2);
  CHECK(fix_subgroup(full).elems() == std::vector<Elem>{z(0)});

  SubshiftSpec declared = golden_mean();
  declared.fix = ElemSet(declared.group, {z(0)});
  CHECK(fix_subgroup(declared).size() == 1);
}

TEST_CASE("spec JSON round trip and validation") {
  auto spec = golden_mean();
  auto back = SubshiftSpec::from_json(spec.to_json());
  CHECK(back.forbidden.size() == 1);
  CHECK(back.forbidden[0] == spec.forbidden[0]);
  CHECK(back.validate().empty());

  SubshiftSpec bad = spec;
  bad.kind = SubshiftKind::Full;
  CHECK_FALSE(bad.validate().empty());  // full shift with forbidden words
}

TEST_CASE("interval log2 counting matches enumeration") {
  auto spec = golden_mean();
  LanguageOracle o{spec};
  for (int n = 1; n <= 6; ++n) {
    long double via_graph = z_interval_log2_count(spec, n);
    long double direct =
        std::log2(static_cast<long double>(language_count(o, interval(spec.group, n))));
    CHECK(std::abs(via_graph - direct) < 1e-9L);
  }
}
