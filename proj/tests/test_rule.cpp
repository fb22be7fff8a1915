#include <doctest.h>

#include "sdtk/rule.hpp"

using namespace sdtk;

namespace {

Elem z(int n) { return Elem{{n}}; }

LocalRule xor_rule() {
  auto Z = Group::integers();
  auto A = Alphabet::numeric(2);
  ElemSet mem(Z, {z(0), z(1)});
  // table index: value at 0 is the high digit
  return LocalRule(Z, A, A, mem, std::vector<int>{0, 1, 1, 0});
}

}  // namespace

TEST_CASE("apply shrinks the support correctly") {
  auto r = xor_rule();
  auto Z = r.group();
  Pattern w(Z, r.in_alphabet(), ElemSet(Z, {z(0), z(1), z(2), z(3)}),
            {0, 1, 1, 0});
  Pattern out = apply(r, w);
  CHECK(out.support().size() == 3);
  CHECK(out.at(z(0)) == 1);
  CHECK(out.at(z(1)) == 0);
  CHECK(out.at(z(2)) == 1);
}

TEST_CASE("shift composition adds displacements") {
  auto Z = Group::integers();
  auto A = Alphabet::numeric(2);
  auto t1 = tau(Z, A, z(1));
  auto t2 = tau(Z, A, z(2));
  auto cmp = equals_as_tables(compose(t1, t2), tau(Z, A, z(3)));
  CHECK(cmp.equal);
}

TEST_CASE("composition memory is the product set") {
  auto r = xor_rule();
  auto sq = compose(r, r);
  CHECK(sq.memory().size() == 3);  // {0,1,2}
  // xor of xor is x(0) xor x(2)
  CHECK(sq.eval({0, 1, 0}) == 0);
  CHECK(sq.eval({0, 1, 1}) == 1);
  CHECK(sq.eval({1, 0, 0}) == 1);
}

TEST_CASE("procedure-backed rules materialize on demand") {
  auto Z = Group::integers();
  auto A = Alphabet::numeric(2);
  ElemSet mem(Z, {z(0), z(1)});
  LocalRule fn_rule(Z, A, A, mem,
                    [](const std::vector<int>& v) { return v[0] ^ v[1]; });
  CHECK_FALSE(fn_rule.dense());
  CHECK(fn_rule.materialize() == std::vector<int>{0, 1, 1, 0});
  CHECK(equals_as_tables(fn_rule, xor_rule()).equal);
}

TEST_CASE("rule JSON round trip") {
  auto r = xor_rule();
  auto back = LocalRule::from_json(r.to_json());
  CHECK(equals_as_tables(r, back).equal);
  CHECK(back.memory() == r.memory());
}

TEST_CASE("slow shift roots of the shift") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2},
                                                      {3, 2}, {2, 3}}) {
    auto Z = Group::integers();
    auto root = slow_shift(Z, n, k, z(1));
    CHECK(root.forward.in_alphabet()->size() ==
          static_cast<std::size_t>(std::pow(n, k)));
    LocalRule power = root.forward;
    for (int i = 1; i < k; ++i) power = compose(power, root.forward);
    CHECK(equals_as_tables(power,
                           tau(Z, root.forward.in_alphabet(), z(1)))
              .equal);
    CHECK(equals_as_tables(
              compose(root.forward, root.inverse),
              LocalRule::identity(Z, root.forward.in_alphabet()))
              .equal);
  }
}

TEST_CASE("slow shift over the free group") {
  auto F2 = Group::free_group(2);
  Elem a = F2->parse("a");
  auto root = slow_shift(F2, 3, 2, a);
  LocalRule power = compose(root.forward, root.forward);
  CHECK(equals_as_tables(power, tau(F2, root.forward.in_alphabet(), a))
            .equal);
}

TEST_CASE("table comparison reports a witness") {
  auto Z = Group::integers();
  auto A = Alphabet::numeric(2);
  auto id = LocalRule::identity(Z, A);
  LocalRule flip(Z, A, A, ElemSet(Z, {z(0)}), std::vector<int>{1, 0});
  auto cmp = equals_as_tables(id, flip);
  CHECK_FALSE(cmp.equal);
  REQUIRE(cmp.witness_values.has_value());
  CHECK(id.eval(*cmp.witness_values) != flip.eval(*cmp.witness_values));
}

TEST_CASE("automorphism enumeration at small radius") {
  auto Z = Group::integers();
  auto A = Alphabet::numeric(2);
  auto r0 = enumerate_automorphisms(Z, A, 0, 0);
  CHECK(r0.automorphisms.size() == 2);  // identity and flip
  auto r1 = enumerate_automorphisms(Z, A, 1, 1);
  CHECK(r1.automorphisms.size() == 6);
  CHECK(r1.tables_scanned == 256);
  for (const auto& aut : r1.automorphisms) {
    auto cmp = equals_as_tables(compose(aut.forward, aut.inverse),
                                LocalRule::identity(Z, A));
    CHECK(cmp.equal);
  }
}

TEST_CASE("three-symbol enumeration at radius zero") {
  auto res = enumerate_automorphisms(Group::integers(),
                                     Alphabet::numeric(3), 0, 0);
  CHECK(res.automorphisms.size() == 6);  // Sym(3)
}

TEST_CASE("language-based equality respects the subshift") {
  SubshiftSpec spec;
  spec.group = Group::integers();
  spec.alphabet = Alphabet::numeric(2);
  spec.kind = SubshiftKind::Sft;
  spec.forbidden.push_back(Pattern(spec.group, spec.alphabet,
                                   ElemSet(spec.group, {z(0), z(1)}),
                                   {1, 1}));
  LanguageOracle o{spec};
  auto Z = spec.group;
  auto A = spec.alphabet;
  // "and of neighbors" equals the constant-zero rule on the golden-mean
  // language but not on the full shift
  LocalRule both_ones(Z, A, A, ElemSet(Z, {z(0), z(1)}),
                      std::vector<int>{0, 0, 0, 1});
  LocalRule zero(Z, A, A, ElemSet(Z, {z(0)}), std::vector<int>{0, 0});
  CHECK(equals_on_language(both_ones, zero, o).equal);
  CHECK_FALSE(equals_as_tables(both_ones, zero).equal);
}
