#include "sdtk/rule.hpp"

#include <algorithm>
#include <cmath>

namespace sdtk {

namespace {

long double pow_ld(std::size_t base, std::size_t exp) {
  return std::pow(static_cast<long double>(base),
                  static_cast<long double>(exp));
}

/// Odometer over value vectors of fixed length; returns false after the
/// last combination.
bool next_values(std::vector<int>& v, int alpha) {
  std::size_t i = v.size();
  while (i > 0 && v[i - 1] == alpha - 1) v[--i] = 0;
  if (i == 0) return false;
  ++v[i - 1];
  return true;
}

}  // namespace

LocalRule::LocalRule(GroupPtr group, AlphabetPtr in_alpha,
                     AlphabetPtr out_alpha, ElemSet memory,
                     std::vector<int> table)
    : group_(std::move(group)),
      in_alpha_(std::move(in_alpha)),
      out_alpha_(std::move(out_alpha)),
      memory_(std::move(memory)),
      table_(std::move(table)) {
  long double expect = pow_ld(in_alpha_->size(), memory_.size());
  if (static_cast<long double>(table_.size()) != expect)
    throw std::invalid_argument("rule table has wrong size");
  for (int v : table_)
    if (v < 0 || static_cast<std::size_t>(v) >= out_alpha_->size())
      throw std::invalid_argument("rule table value outside alphabet");
}

LocalRule::LocalRule(GroupPtr group, AlphabetPtr in_alpha,
                     AlphabetPtr out_alpha, ElemSet memory,
                     std::function<int(const std::vector<int>&)> fn)
    : group_(std::move(group)),
      in_alpha_(std::move(in_alpha)),
      out_alpha_(std::move(out_alpha)),
      memory_(std::move(memory)),
      fn_(std::move(fn)) {}

int LocalRule::eval(const std::vector<int>& values) const {
  if (values.size() != memory_.size())
    throw std::invalid_argument("rule input has wrong arity");
  if (!table_.empty() || !fn_) {
    std::size_t idx = 0;
    for (int v : values) idx = idx * in_alpha_->size() + v;
    return table_.at(idx);
  }
  auto it = memo_.find(values);
  if (it != memo_.end()) return it->second;
  int out = fn_(values);
  if (memo_.size() < (1u << 22)) memo_.emplace(values, out);
  return out;
}

long double LocalRule::table_size() const {
  return pow_ld(in_alpha_->size(), memory_.size());
}

std::vector<int> LocalRule::materialize(std::size_t budget) const {
  if (!table_.empty() || !fn_) return table_;
  if (table_size() > static_cast<long double>(budget))
    throw BudgetExceeded("rule table exceeds budget");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(table_size()));
  std::vector<int> v(memory_.size(), 0);
  int alpha = static_cast<int>(in_alpha_->size());
  do {
    out.push_back(eval(v));
  } while (next_values(v, alpha));
  return out;
}

json LocalRule::to_json(std::size_t budget) const {
  auto table = materialize(budget);
  json t = json::array();
  for (int v : table) t.push_back(out_alpha_->symbol(v));
  return json{{"group", group_->to_json()},
              {"in_alphabet", in_alpha_->to_json()},
              {"out_alphabet", out_alpha_->to_json()},
              {"memory", set_to_json(memory_)},
              {"table", t}};
}

LocalRule LocalRule::from_json(const json& j) {
  auto g = Group::from_json(j.at("group"));
  auto in_a = Alphabet::from_json(j.at("in_alphabet"));
  auto out_a = j.contains("out_alphabet")
                   ? Alphabet::from_json(j.at("out_alphabet"))
                   : in_a;
  ElemSet mem = set_from_json(g, j.at("memory"));
  std::vector<int> table;
  for (const auto& v : j.at("table"))
    table.push_back(v.is_string() ? out_a->index_of(v.get<std::string>())
                                  : v.get<int>());
  return LocalRule(g, in_a, out_a, mem, std::move(table));
}

LocalRule LocalRule::identity(GroupPtr group, AlphabetPtr alpha) {
  std::vector<int> table(alpha->size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = i;
  ElemSet mem(group, {group->identity()});
  return LocalRule(std::move(group), alpha, alpha, mem, std::move(table));
}

json RuleAutomorphism::to_json(std::size_t budget) const {
  return json{{"forward", forward.to_json(budget)},
              {"inverse", inverse.to_json(budget)}};
}

RuleAutomorphism RuleAutomorphism::from_json(const json& j) {
  return RuleAutomorphism{LocalRule::from_json(j.at("forward")),
                          LocalRule::from_json(j.at("inverse"))};
}

Pattern apply(const LocalRule& rule, const Pattern& w) {
  const auto& g = rule.group();
  ElemSet candidates = set_product(w.support(), set_inverse(rule.memory()));
  std::vector<Elem> out_support;
  std::vector<int> out_values;
  for (const auto& c : candidates.elems()) {
    std::vector<int> values;
    values.reserve(rule.memory().size());
    bool inside = true;
    for (const auto& f : rule.memory().elems()) {
      auto v = w.maybe_at(g->mul(c, f));
      if (!v) {
        inside = false;
        break;
      }
      values.push_back(*v);
    }
    if (!inside) continue;
    out_support.push_back(c);
    out_values.push_back(rule.eval(values));
  }
  return Pattern(g, rule.out_alphabet(), ElemSet(g, std::move(out_support)),
                 std::move(out_values));
}

LocalRule compose(const LocalRule& r1, const LocalRule& r2,
                  std::size_t budget) {
  if (r2.out_alphabet()->symbols() != r1.in_alphabet()->symbols())
    throw std::invalid_argument("composed rules have incompatible alphabets");
  const auto& g = r1.group();
  ElemSet mem = set_product(r1.memory(), r2.memory());
  // Positions in mem consulted by the inner rule for each outer memory cell.
  std::vector<std::vector<std::size_t>> slots;
  for (const auto& f1 : r1.memory().elems()) {
    std::vector<std::size_t> row;
    for (const auto& f2 : r2.memory().elems())
      row.push_back(
          static_cast<std::size_t>(mem.index_of(g->mul(f1, f2))));
    slots.push_back(std::move(row));
  }
  LocalRule inner = r2;
  LocalRule outer = r1;
  auto fn = [inner, outer, slots](const std::vector<int>& values) {
    std::vector<int> mid;
    mid.reserve(slots.size());
    std::vector<int> sub;
    for (const auto& row : slots) {
      sub.clear();
      for (std::size_t idx : row) sub.push_back(values[idx]);
      mid.push_back(inner.eval(sub));
    }
    return outer.eval(mid);
  };
  LocalRule composed(g, r2.in_alphabet(), r1.out_alphabet(), mem, fn);
  if (composed.table_size() <= static_cast<long double>(budget))
    return LocalRule(g, r2.in_alphabet(), r1.out_alphabet(), mem,
                     composed.materialize(budget));
  return composed;
}

LocalRule tau(GroupPtr group, AlphabetPtr alpha, const Elem& g) {
  std::vector<int> table(alpha->size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = i;
  ElemSet mem(group, {g});
  return LocalRule(std::move(group), alpha, alpha, mem, std::move(table));
}

AlphabetPtr tuple_alphabet(int n, int k) {
  long double count = std::pow(static_cast<long double>(n), k);
  if (count > (1 << 20)) throw BudgetExceeded("tuple alphabet too large");
  return Alphabet::numeric(static_cast<int>(count));
}

RuleAutomorphism slow_shift(GroupPtr group, int n, int k, const Elem& h) {
  if (n < 1 || k < 1) throw std::invalid_argument("slow shift needs n,k >= 1");
  auto alpha = tuple_alphabet(n, k);
  auto digit = [n](int sym, int i) {  // coordinate i, 1-based
    int d = sym;
    for (int j = 1; j < i; ++j) d /= n;
    return d % n;
  };
  auto encode = [n, k](const std::vector<int>& digits) {
    int s = 0;
    for (int i = k; i >= 1; --i) s = s * n + digits[i - 1];
    return s;
  };
  Elem id = group->identity();
  {
    // Forward rule: coordinate 1 reads coordinate k at h, the rest shift up.
    ElemSet mem(group, {id, h});
    auto i_id = static_cast<std::size_t>(mem.index_of(id));
    auto i_h = static_cast<std::size_t>(mem.index_of(h));
    Elem hinv = group->inv(h);
    ElemSet mem_inv(group, {id, hinv});
    auto j_id = static_cast<std::size_t>(mem_inv.index_of(id));
    auto j_hinv = static_cast<std::size_t>(mem_inv.index_of(hinv));
    auto fwd_fn = [digit, encode, k, i_id, i_h](const std::vector<int>& v) {
      std::vector<int> d(static_cast<std::size_t>(k));
      d[0] = digit(v[i_h], k);
      for (int i = 2; i <= k; ++i)
        d[static_cast<std::size_t>(i - 1)] = digit(v[i_id], i - 1);
      return encode(d);
    };
    auto inv_fn = [digit, encode, k, j_id, j_hinv](const std::vector<int>& v) {
      std::vector<int> d(static_cast<std::size_t>(k));
      for (int i = 1; i < k; ++i)
        d[static_cast<std::size_t>(i - 1)] = digit(v[j_id], i + 1);
      d[static_cast<std::size_t>(k - 1)] = digit(v[j_hinv], 1);
      return encode(d);
    };
    LocalRule fwd_p(group, alpha, alpha, mem, fwd_fn);
    LocalRule inv_p(group, alpha, alpha, mem_inv, inv_fn);
    return RuleAutomorphism{
        LocalRule(group, alpha, alpha, mem, fwd_p.materialize()),
        LocalRule(group, alpha, alpha, mem_inv, inv_p.materialize())};
  }
}

namespace {

std::vector<std::size_t> projection(const ElemSet& sub, const ElemSet& all) {
  std::vector<std::size_t> idx;
  idx.reserve(sub.size());
  for (const auto& e : sub.elems())
    idx.push_back(static_cast<std::size_t>(all.index_of(e)));
  return idx;
}

}  // namespace

RuleComparison equals_on_language(const LocalRule& r1, const LocalRule& r2,
                                  const LanguageOracle& oracle,
                                  std::size_t budget) {
  RuleComparison cmp;
  ElemSet U = r1.memory().set_union(r2.memory());
  auto p1 = projection(r1.memory(), U);
  auto p2 = projection(r2.memory(), U);
  auto lang = language(oracle, U, budget);
  std::vector<int> v1, v2;
  for (const auto& p : lang.patterns) {
    v1.clear();
    v2.clear();
    for (std::size_t i : p1) v1.push_back(p.values()[i]);
    for (std::size_t i : p2) v2.push_back(p.values()[i]);
    if (r1.eval(v1) != r2.eval(v2)) {
      cmp.equal = false;
      cmp.witness = p;
      return cmp;
    }
  }
  return cmp;
}

RuleComparison equals_as_tables(const LocalRule& r1, const LocalRule& r2,
                                std::size_t budget) {
  RuleComparison cmp;
  ElemSet U = r1.memory().set_union(r2.memory());
  auto p1 = projection(r1.memory(), U);
  auto p2 = projection(r2.memory(), U);
  int alpha = static_cast<int>(r1.in_alphabet()->size());
  if (pow_ld(static_cast<std::size_t>(alpha), U.size()) >
      static_cast<long double>(budget))
    throw BudgetExceeded("table comparison domain exceeds budget");
  std::vector<int> v(U.size(), 0);
  std::vector<int> v1, v2;
  do {
    v1.clear();
    v2.clear();
    for (std::size_t i : p1) v1.push_back(v[i]);
    for (std::size_t i : p2) v2.push_back(v[i]);
    if (r1.eval(v1) != r2.eval(v2)) {
      cmp.equal = false;
      cmp.witness_values = v;
      return cmp;
    }
  } while (next_values(v, alpha));
  return cmp;
}

EnumerationResult enumerate_automorphisms(const GroupPtr& z,
                                          const AlphabetPtr& alpha, int r,
                                          int inv_radius,
                                          std::size_t budget) {
  if (z->kind() != GroupKind::Integers)
    throw std::invalid_argument("enumeration implemented over the integers");
  EnumerationResult res;
  int a = static_cast<int>(alpha->size());
  ElemSet mem = z->ball(r);
  ElemSet inv_mem = z->ball(inv_radius);
  int m = static_cast<int>(mem.size());
  int im = static_cast<int>(inv_mem.size());
  int wide = 2 * (r + inv_radius) + 1;
  long double tables = std::pow((long double)a, std::pow((long double)a, m));
  long double windows = std::pow((long double)a, wide);
  if (tables > static_cast<long double>(budget) ||
      windows > static_cast<long double>(budget))
    throw BudgetExceeded("automorphism enumeration exceeds budget");

  std::size_t table_len = 1;
  for (int i = 0; i < m; ++i) table_len *= static_cast<std::size_t>(a);
  std::size_t inv_len = 1;
  for (int i = 0; i < im; ++i) inv_len *= static_cast<std::size_t>(a);

  std::vector<int> table(table_len, 0);
  auto id_rule = LocalRule::identity(z, alpha);
  do {
    ++res.tables_scanned;
    LocalRule fwd(z, alpha, alpha, mem, table);
    // Inverse synthesis: every window of radius r+inv_radius determines an
    // output word over B(inv_radius); the inverse must send that word back
    // to the window's center. Conflicts mean no inverse at this radius.
    std::vector<int> inv_table(inv_len, -1);
    bool consistent = true;
    std::vector<int> w(static_cast<std::size_t>(wide), 0);
    do {
      std::size_t key = 0;
      for (int p = -inv_radius; p <= inv_radius; ++p) {
        std::vector<int> sub(w.begin() + (p + inv_radius),
                             w.begin() + (p + inv_radius) + m);
        key = key * static_cast<std::size_t>(a) +
              static_cast<std::size_t>(fwd.eval(sub));
      }
      int center = w[static_cast<std::size_t>(r + inv_radius)];
      if (inv_table[key] == -1)
        inv_table[key] = center;
      else if (inv_table[key] != center) {
        consistent = false;
        break;
      }
    } while (next_values(w, a));
    if (!consistent) {
      ++res.inconclusive_rejections;
      continue;
    }
    for (int& v : inv_table)
      if (v == -1) v = 0;  // unreached output words; final check decides
    LocalRule inv(z, alpha, alpha, inv_mem, inv_table);
    auto left = equals_as_tables(compose(inv, fwd, budget), id_rule, budget);
    auto right = equals_as_tables(compose(fwd, inv, budget), id_rule, budget);
    if (left.equal && right.equal)
      res.automorphisms.push_back(RuleAutomorphism{fwd, inv});
    else
      ++res.inconclusive_rejections;
  } while (next_values(table, a));
  return res;
}

CenterTestResult center_test(const RuleAutomorphism& candidate,
                             const std::vector<LocalRule>& probes,
                             const LanguageOracle& oracle,
                             std::size_t budget) {
  CenterTestResult res;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    ++res.probes_run;
    auto cp = compose(candidate.forward, probes[i], budget);
    auto pc = compose(probes[i], candidate.forward, budget);
    auto cmp = equals_on_language(cp, pc, oracle, budget);
    if (!cmp.equal) res.failures.emplace_back(i, *cmp.witness);
  }
  return res;
}

}  // namespace sdtk
