#include "sdtk/subshift.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>

namespace sdtk {

namespace {

std::string kind_name(SubshiftKind k) {
  switch (k) {
    case SubshiftKind::Full: return "full";
    case SubshiftKind::Sft: return "sft";
    case SubshiftKind::Oracle: return "oracle";
  }
  return "?";
}

SubshiftKind kind_from_name(const std::string& s) {
  if (s == "full") return SubshiftKind::Full;
  if (s == "sft") return SubshiftKind::Sft;
  if (s == "oracle") return SubshiftKind::Oracle;
  throw std::invalid_argument("unknown subshift kind: " + s);
}

}  // namespace

std::string exactness_label(Exactness e) {
  switch (e) {
    case Exactness::Exact: return "exact";
    case Exactness::Upper: return "upper";
    case Exactness::Inconclusive: return "inconclusive";
  }
  return "?";
}

json SubshiftSpec::to_json() const {
  json j{{"group", group->to_json()},
         {"alphabet", alphabet->to_json()},
         {"kind", kind_name(kind)}};
  if (kind == SubshiftKind::Sft) {
    json fb = json::array();
    for (const auto& p : forbidden) fb.push_back(p.to_json());
    j["forbidden"] = fb;
  }
  if (si_constant) j["K"] = set_to_json(*si_constant);
  if (tmp_constant) j["M"] = set_to_json(*tmp_constant);
  if (fix) j["fix"] = set_to_json(*fix);
  return j;
}

SubshiftSpec SubshiftSpec::from_json(const json& j) {
  SubshiftSpec s;
  s.group = Group::from_json(j.at("group"));
  s.alphabet = Alphabet::from_json(j.at("alphabet"));
  s.kind = kind_from_name(j.at("kind").get<std::string>());
  if (j.contains("forbidden"))
    for (const auto& pj : j["forbidden"])
      s.forbidden.push_back(Pattern::from_json(s.group, s.alphabet, pj));
  if (j.contains("K")) s.si_constant = set_from_json(s.group, j["K"]);
  if (j.contains("M")) s.tmp_constant = set_from_json(s.group, j["M"]);
  if (j.contains("fix")) s.fix = set_from_json(s.group, j["fix"]);
  return s;
}

std::vector<std::string> SubshiftSpec::validate() const {
  std::vector<std::string> bad;
  if (kind == SubshiftKind::Full && !forbidden.empty())
    bad.push_back("full shift declares forbidden patterns");
  for (const auto& p : forbidden)
    if (p.size() == 0) bad.push_back("forbidden pattern with empty support");
  Elem id = group->identity();
  if (si_constant && !si_constant->contains(id))
    bad.push_back(
        "declared K misses the identity (required unless the subshift is "
        "trivial)");
  if (fix) {
    for (const auto& a : fix->elems())
      for (const auto& b : fix->elems())
        if (!fix->contains(group->mul(a, b))) {
          bad.push_back("declared Fix is not closed under multiplication");
          goto fix_closed_done;
        }
  fix_closed_done:
    if (si_constant && !fix->subset_of(*si_constant))
      bad.push_back("declared Fix is not contained in declared K");
  }
  return bad;
}

Elem SubgroupEmbedding::embed(const Elem& h) const {
  Elem out = G->identity();
  auto mul_pow = [&](const Elem& base, std::int64_t n) {
    Elem b = n >= 0 ? base : G->inv(base);
    for (std::int64_t i = 0; i < std::llabs(n); ++i) out = G->mul(out, b);
  };
  switch (H->kind()) {
    case GroupKind::Integers:
      mul_pow(gen_images.at(0), h.c.at(0));
      break;
    case GroupKind::Lattice:
      for (std::size_t i = 0; i < h.c.size(); ++i)
        mul_pow(gen_images.at(i), h.c[i]);
      break;
    case GroupKind::Free:
      for (std::int32_t letter : h.c) {
        const Elem& img = gen_images.at(std::abs(letter) - 1);
        out = G->mul(out, letter > 0 ? img : G->inv(img));
      }
      break;
    default:
      throw std::invalid_argument(
          "subgroup embedding supports integer, lattice, and free domains");
  }
  return out;
}

ElemSet SubgroupEmbedding::embed_set(const ElemSet& F) const {
  std::vector<Elem> out;
  out.reserve(F.size());
  for (const auto& e : F.elems()) out.push_back(embed(e));
  ElemSet result(G, std::move(out));
  if (result.size() != F.size())
    throw std::invalid_argument("subgroup embedding is not injective on set");
  return result;
}

bool locally_admissible(const SubshiftSpec& spec, const Pattern& w) {
  if (spec.kind != SubshiftKind::Sft) return true;
  const auto& g = spec.group;
  for (const auto& q : spec.forbidden) {
    std::set<Elem> candidates;
    for (const auto& h : w.support().elems())
      for (const auto& t : q.support().elems())
        candidates.insert(g->mul(h, g->inv(t)));
    for (const auto& c : candidates) {
      bool match = true;
      for (std::size_t i = 0; i < q.size(); ++i) {
        auto v = w.maybe_at(g->mul(c, q.support().elems()[i]));
        if (!v || *v != q.values()[i]) {
          match = false;
          break;
        }
      }
      if (match) return false;
    }
  }
  return true;
}

namespace {

// ---- Exact machinery for SFTs over the integers ----

struct ZForbidden {
  std::vector<int> offsets;  // normalized, offsets[0] == 0 after sort
  std::vector<int> values;
  int span = 1;  // max offset + 1
};

struct ZSftGraph {
  int alpha = 0;
  int L = 1;  // window length
  // L == 1: allowed letters only.
  std::vector<int> allowed;
  // L >= 2: states are admissible (L-1)-letter words, canonically sorted.
  std::vector<std::vector<int>> states;
  // edges[i] = successor state indices of states[i].
  std::vector<std::vector<int>> edges;
  std::vector<std::vector<int>> redges;
};

std::vector<ZForbidden> normalize_z_forbidden(const SubshiftSpec& spec) {
  std::vector<ZForbidden> out;
  for (const auto& q : spec.forbidden) {
    ZForbidden f;
    int mn = q.support().elems().front().c[0];
    for (std::size_t i = 0; i < q.size(); ++i) {
      f.offsets.push_back(q.support().elems()[i].c[0] - mn);
      f.values.push_back(q.values()[i]);
    }
    f.span = f.offsets.back() + 1;
    out.push_back(std::move(f));
  }
  return out;
}

bool z_word_ok(const std::vector<int>& w, const std::vector<ZForbidden>& fb) {
  for (const auto& f : fb) {
    if (f.span > static_cast<int>(w.size())) continue;
    for (int pos = 0; pos + f.span <= static_cast<int>(w.size()); ++pos) {
      bool match = true;
      for (std::size_t i = 0; i < f.offsets.size(); ++i)
        if (w[pos + f.offsets[i]] != f.values[i]) {
          match = false;
          break;
        }
      if (match) return false;
    }
  }
  return true;
}

ZSftGraph build_z_graph(const SubshiftSpec& spec, std::size_t budget) {
  ZSftGraph gph;
  gph.alpha = static_cast<int>(spec.alphabet->size());
  auto fb = normalize_z_forbidden(spec);
  for (const auto& f : fb) gph.L = std::max(gph.L, f.span);
  if (gph.L == 1) {
    for (int a = 0; a < gph.alpha; ++a) {
      std::vector<int> w{a};
      if (z_word_ok(w, fb)) gph.allowed.push_back(a);
    }
    return gph;
  }
  int n = gph.L - 1;
  double total = std::pow(static_cast<double>(gph.alpha), n);
  if (total > static_cast<double>(budget))
    throw BudgetExceeded("transfer-graph state space exceeds budget");
  std::vector<int> w(n, 0);
  std::map<std::vector<int>, int> index;
  while (true) {
    if (z_word_ok(w, fb)) {
      index[w] = static_cast<int>(gph.states.size());
      gph.states.push_back(w);
    }
    int i = n - 1;
    while (i >= 0 && w[i] == gph.alpha - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  gph.edges.resize(gph.states.size());
  gph.redges.resize(gph.states.size());
  for (std::size_t s = 0; s < gph.states.size(); ++s) {
    std::vector<int> next(gph.states[s].begin() + 1, gph.states[s].end());
    next.push_back(0);
    std::vector<int> combined = gph.states[s];
    combined.push_back(0);
    for (int a = 0; a < gph.alpha; ++a) {
      next.back() = a;
      combined.back() = a;
      auto it = index.find(next);
      if (it == index.end()) continue;
      if (!z_word_ok(combined, fb)) continue;
      gph.edges[s].push_back(it->second);
      gph.redges[static_cast<std::size_t>(it->second)].push_back(
          static_cast<int>(s));
    }
  }
  // Keep only states on bi-infinite paths: drop sources and sinks to a
  // fixpoint.
  std::vector<bool> alive(gph.states.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < gph.states.size(); ++s) {
      if (!alive[s]) continue;
      auto has_live = [&](const std::vector<int>& nbrs) {
        for (int t : nbrs)
          if (alive[static_cast<std::size_t>(t)]) return true;
        return false;
      };
      if (!has_live(gph.edges[s]) || !has_live(gph.redges[s])) {
        alive[s] = false;
        changed = true;
      }
    }
  }
  ZSftGraph pruned;
  pruned.alpha = gph.alpha;
  pruned.L = gph.L;
  std::vector<int> remap(gph.states.size(), -1);
  for (std::size_t s = 0; s < gph.states.size(); ++s)
    if (alive[s]) {
      remap[s] = static_cast<int>(pruned.states.size());
      pruned.states.push_back(gph.states[s]);
    }
  pruned.edges.resize(pruned.states.size());
  pruned.redges.resize(pruned.states.size());
  for (std::size_t s = 0; s < gph.states.size(); ++s) {
    if (!alive[s]) continue;
    for (int t : gph.edges[s])
      if (alive[static_cast<std::size_t>(t)]) {
        pruned.edges[static_cast<std::size_t>(remap[s])].push_back(remap[t]);
        pruned.redges[static_cast<std::size_t>(remap[t])].push_back(remap[s]);
      }
  }
  return pruned;
}

/// All globally admissible words of length n, via paths in the pruned graph.
std::set<std::vector<int>> z_words(const ZSftGraph& gph, int n,
                                   std::size_t budget) {
  std::set<std::vector<int>> out;
  if (n == 0) {
    bool nonempty =
        gph.L == 1 ? !gph.allowed.empty() : !gph.states.empty();
    if (nonempty) out.insert({});
    return out;
  }
  if (gph.L == 1) {
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) {
      count *= gph.allowed.size();
      if (count > budget) throw BudgetExceeded("word enumeration over budget");
      if (count == 0) return out;
    }
    std::vector<int> w(n, 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        out.insert(w);
        return;
      }
      for (int a : gph.allowed) {
        w[i] = a;
        rec(i + 1);
      }
    };
    rec(0);
    return out;
  }
  int m = gph.L - 1;
  if (n <= m) {
    for (const auto& st : gph.states)
      out.insert(std::vector<int>(st.begin(), st.begin() + n));
    return out;
  }
  std::size_t nodes = 0;
  std::vector<int> w;
  std::function<void(int, int)> rec = [&](int state, int len) {
    if (++nodes > budget * 4)
      throw BudgetExceeded("word enumeration over budget");
    if (len == n) {
      out.insert(w);
      if (out.size() > budget)
        throw BudgetExceeded("word enumeration over budget");
      return;
    }
    for (int t : gph.edges[static_cast<std::size_t>(state)]) {
      w.push_back(gph.states[static_cast<std::size_t>(t)].back());
      rec(t, len + 1);
      w.pop_back();
    }
  };
  for (std::size_t s = 0; s < gph.states.size(); ++s) {
    w = gph.states[s];
    rec(static_cast<int>(s), m);
  }
  return out;
}

/// Count of globally admissible words of length n (no materialization).
long double z_word_count(const ZSftGraph& gph, int n) {
  if (n == 0) return (gph.L == 1 ? !gph.allowed.empty() : !gph.states.empty())
                         ? 1.0L
                         : 0.0L;
  if (gph.L == 1)
    return std::pow(static_cast<long double>(gph.allowed.size()),
                    static_cast<long double>(n));
  int m = gph.L - 1;
  if (n <= m) {
    std::set<std::vector<int>> prefixes;
    for (const auto& st : gph.states)
      prefixes.insert(std::vector<int>(st.begin(), st.begin() + n));
    return static_cast<long double>(prefixes.size());
  }
  std::vector<long double> v(gph.states.size(), 1.0L);
  for (int step = 0; step < n - m; ++step) {
    std::vector<long double> nv(gph.states.size(), 0.0L);
    for (std::size_t s = 0; s < gph.states.size(); ++s)
      for (int t : gph.edges[s]) nv[s] += v[static_cast<std::size_t>(t)];
    v = std::move(nv);
  }
  long double total = 0;
  for (long double x : v) total += x;
  return total;
}

// ---- General margin-extension enumeration by backtracking ----

struct DfsCheck {
  std::vector<std::pair<int, int>> cells;  // (cell index, required value)
};

/// Enumerates, as sorted value vectors on `target`, the patterns that extend
/// to a locally admissible assignment of all of `ext` (target must be a
/// subset of ext). Exact when ext carries every constraint that matters;
/// in general an over-approximation of the global language on target.
std::set<std::vector<int>> enumerate_extendable(const SubshiftSpec& spec,
                                                const ElemSet& target,
                                                const ElemSet& ext,
                                                std::size_t budget) {
  const auto& g = spec.group;
  int alpha = static_cast<int>(spec.alphabet->size());
  // Cell order: target cells first so a found extension lets us backtrack
  // straight out of the margin.
  std::vector<Elem> order = target.elems();
  for (const auto& e : ext.elems())
    if (!target.contains(e)) order.push_back(e);
  std::map<Elem, int> cell_index;
  for (std::size_t i = 0; i < order.size(); ++i) cell_index[order[i]] = i;

  std::vector<std::vector<DfsCheck>> checks(order.size());
  if (spec.kind == SubshiftKind::Sft) {
    for (const auto& q : spec.forbidden) {
      std::set<Elem> candidates;
      for (const auto& e : order)
        for (const auto& t : q.support().elems())
          candidates.insert(g->mul(e, g->inv(t)));
      for (const auto& c : candidates) {
        DfsCheck chk;
        int last = -1;
        bool inside = true;
        for (std::size_t i = 0; i < q.size(); ++i) {
          auto it = cell_index.find(g->mul(c, q.support().elems()[i]));
          if (it == cell_index.end()) {
            inside = false;
            break;
          }
          chk.cells.emplace_back(it->second, q.values()[i]);
          last = std::max(last, it->second);
        }
        if (inside) checks[static_cast<std::size_t>(last)].push_back(chk);
      }
    }
  }

  std::set<std::vector<int>> found;
  std::vector<int> assign(order.size(), -1);
  std::size_t nodes = 0;
  int nt = static_cast<int>(target.size());
  // Returns true when a full admissible extension exists below this node.
  std::function<bool(int)> rec = [&](int depth) -> bool {
    if (depth == static_cast<int>(order.size())) return true;
    if (++nodes > budget * 8)
      throw BudgetExceeded("pattern enumeration over budget");
    for (int a = 0; a < alpha; ++a) {
      assign[depth] = a;
      bool ok = true;
      for (const auto& chk : checks[static_cast<std::size_t>(depth)]) {
        bool match = true;
        for (auto [ci, v] : chk.cells)
          if (assign[static_cast<std::size_t>(ci)] != v) {
            match = false;
            break;
          }
        if (match) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (rec(depth + 1)) {
        if (depth >= nt) return true;  // margin cell: one witness suffices
        found.insert(std::vector<int>(assign.begin(), assign.begin() + nt));
        if (found.size() > budget)
          throw BudgetExceeded("pattern enumeration over budget");
      }
    }
    assign[depth] = -1;
    return false;
  };
  if (order.empty()) {
    found.insert({});
    return found;
  }
  rec(0);
  return found;
}

std::vector<Pattern> patterns_from_vectors(
    const SubshiftSpec& spec, const ElemSet& F,
    const std::set<std::vector<int>>& vecs) {
  std::vector<Pattern> out;
  out.reserve(vecs.size());
  for (const auto& v : vecs)
    out.emplace_back(spec.group, spec.alphabet, F, v);
  return out;
}

LanguageResult language_direct(const LanguageOracle& oracle, const ElemSet& F,
                               std::size_t budget);

LanguageResult language_restricted(const LanguageOracle& oracle,
                                   const ElemSet& F, std::size_t budget) {
  ElemSet FG = oracle.embedding->embed_set(F);
  LanguageResult amb = language(*oracle.ambient, FG, budget);
  LanguageResult out;
  out.exactness = amb.exactness;
  for (const auto& p : amb.patterns) {
    std::vector<int> vals;
    vals.reserve(F.size());
    for (const auto& h : F.elems())
      vals.push_back(p.at(oracle.embedding->embed(h)));
    out.patterns.emplace_back(oracle.spec.group, oracle.spec.alphabet, F,
                              std::move(vals));
  }
  return out;
}

LanguageResult language_direct(const LanguageOracle& oracle, const ElemSet& F,
                               std::size_t budget) {
  const auto& spec = oracle.spec;
  LanguageResult out;
  if (spec.kind == SubshiftKind::Oracle)
    throw std::invalid_argument(
        "oracle-declared subshift has no computable language");
  if (spec.kind == SubshiftKind::Full || spec.forbidden.empty()) {
    int alpha = static_cast<int>(spec.alphabet->size());
    double total = std::pow(static_cast<double>(alpha),
                            static_cast<double>(F.size()));
    if (total > static_cast<double>(budget))
      throw BudgetExceeded("full-shift language exceeds budget");
    std::set<std::vector<int>> vecs;
    std::vector<int> v(F.size(), 0);
    while (true) {
      vecs.insert(v);
      std::size_t i = v.size();
      while (i > 0 && v[i - 1] == alpha - 1) v[--i] = 0;
      if (i == 0) break;
      ++v[i - 1];
    }
    if (F.empty()) vecs.insert({});
    out.patterns = patterns_from_vectors(spec, F, vecs);
    out.exactness = Exactness::Exact;
    return out;
  }
  if (spec.group->kind() == GroupKind::Integers) {
    ZSftGraph gph = build_z_graph(spec, budget);
    std::set<std::vector<int>> vecs;
    if (F.empty()) {
      vecs = z_words(gph, 0, budget);
    } else {
      int mn = F.elems().front().c[0];
      int mx = F.elems().back().c[0];
      int n = mx - mn + 1;
      auto words = z_words(gph, n, budget);
      for (const auto& w : words) {
        std::vector<int> v;
        v.reserve(F.size());
        for (const auto& e : F.elems())
          v.push_back(w[static_cast<std::size_t>(e.c[0] - mn)]);
        vecs.insert(v);
      }
    }
    out.patterns = patterns_from_vectors(spec, F, vecs);
    out.exactness = Exactness::Exact;
    return out;
  }
  // General group: local admissibility on an extended window.
  ElemSet ext = set_product(F, spec.group->ball(oracle.margin, budget));
  ext = ext.set_union(F);
  bool exact = false;
  auto diam = spec.group->diameter();
  if (diam) {
    ElemSet whole = spec.group->ball(*diam, budget);
    if (whole.subset_of(ext)) {
      ext = whole;
      exact = true;  // local admissibility on all of G is global
    }
  }
  auto vecs = enumerate_extendable(spec, F, ext, budget);
  out.patterns = patterns_from_vectors(spec, F, vecs);
  out.exactness = exact ? Exactness::Exact : Exactness::Upper;
  return out;
}

}  // namespace

LanguageResult language(const LanguageOracle& oracle, const ElemSet& F,
                        std::size_t budget) {
  if (oracle.ambient) return language_restricted(oracle, F, budget);
  return language_direct(oracle, F, budget);
}

std::size_t language_count(const LanguageOracle& oracle, const ElemSet& F,
                           std::size_t budget) {
  return language(oracle, F, budget).patterns.size();
}

long double z_interval_log2_count(const SubshiftSpec& spec, int n,
                                  std::size_t budget) {
  if (spec.group->kind() != GroupKind::Integers)
    throw std::invalid_argument("transfer counting needs the integer group");
  if (spec.kind == SubshiftKind::Full || spec.forbidden.empty())
    return n * std::log2(static_cast<long double>(spec.alphabet->size()));
  ZSftGraph gph = build_z_graph(spec, budget);
  return std::log2(z_word_count(gph, n));
}

bool is_trivial_subshift(const LanguageOracle& oracle) {
  ElemSet one(oracle.spec.group, {oracle.spec.group->identity()});
  return language_count(oracle, one) <= 1;
}

ElemSet fix_subgroup(const SubshiftSpec& spec, std::size_t budget) {
  const auto& g = spec.group;
  if (spec.kind == SubshiftKind::Full ||
      (spec.kind == SubshiftKind::Sft && spec.forbidden.empty()))
    return ElemSet(g, {g->identity()});
  if (spec.fix) return *spec.fix;
  auto diam = g->diameter();
  if (!diam)
    throw std::invalid_argument(
        "Fix is undeclared and the group is infinite; declare it in the "
        "subshift spec");
  ElemSet whole = g->ball(*diam, budget);
  auto points = enumerate_extendable(spec, whole, whole, budget);
  std::vector<Elem> fix;
  for (const auto& h : whole.elems()) {
    Elem hinv = g->inv(h);
    bool fixes_all = true;
    for (const auto& x : points) {
      for (std::size_t i = 0; i < whole.size() && fixes_all; ++i) {
        // (hx)(e) = x(h^{-1} e)
        auto pre = whole.index_of(g->mul(hinv, whole.elems()[i]));
        if (x[static_cast<std::size_t>(pre)] != x[i]) fixes_all = false;
      }
      if (!fixes_all) break;
    }
    if (fixes_all) fix.push_back(h);
  }
  return ElemSet(g, std::move(fix));
}

namespace {

/// All nonempty subsets of `ground` with at most `cap` elements.
std::vector<ElemSet> small_subsets(const ElemSet& ground, int cap,
                                   std::size_t budget) {
  std::size_t n = ground.size();
  if (n > 24) throw BudgetExceeded("support ground set too large");
  std::vector<ElemSet> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > cap) continue;
    std::vector<Elem> elems;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) elems.push_back(ground.elems()[i]);
    out.emplace_back(ground.group(), std::move(elems));
    if (out.size() > budget) throw BudgetExceeded("too many test supports");
  }
  return out;
}

bool pattern_in(const std::vector<Pattern>& lang, const Pattern& p) {
  for (const auto& q : lang)
    if (q == p) return true;
  return false;
}

}  // namespace

CheckResult check_strong_irreducibility(const LanguageOracle& oracle,
                                        const ElemSet& K, int size_cap,
                                        const ElemSet& test_ball,
                                        std::size_t budget) {
  CheckResult res;
  auto supports = small_subsets(test_ball, size_cap, budget);
  std::size_t pairs_checked = 0;
  Exactness worst = Exactness::Exact;
  std::map<std::vector<Elem>, LanguageResult> lang_cache;
  auto lang_of = [&](const ElemSet& S) -> const LanguageResult& {
    auto it = lang_cache.find(S.elems());
    if (it == lang_cache.end())
      it = lang_cache.emplace(S.elems(), language(oracle, S, budget)).first;
    return it->second;
  };
  for (const auto& S : supports) {
    ElemSet SK = set_product(S, K);
    for (const auto& T : supports) {
      if (!SK.set_intersect(T).empty()) continue;
      const auto LS = lang_of(S);
      const auto LT = lang_of(T);
      const auto LU = lang_of(S.set_union(T));
      worst = std::max(worst, std::max(LS.exactness,
                                       std::max(LT.exactness, LU.exactness)));
      for (const auto& p : LS.patterns)
        for (const auto& q : LT.patterns) {
          auto cr = concat(p, q);
          if (!cr.pattern) continue;  // only defined concatenations count
          ++pairs_checked;
          if (!pattern_in(LU.patterns, *cr.pattern)) {
            res.pass = false;
            res.details["witness"] = {{"S", set_to_json(S)},
                                      {"T", set_to_json(T)},
                                      {"p", p.to_json()},
                                      {"q", q.to_json()}};
            res.details["pairs_checked"] = pairs_checked;
            res.details["exactness"] = exactness_label(worst);
            return res;
          }
        }
    }
  }
  res.details["pairs_checked"] = pairs_checked;
  res.details["supports_tested"] = supports.size();
  res.details["exactness"] = exactness_label(worst);
  return res;
}

CheckResult check_strong_tmp(const LanguageOracle& oracle, const ElemSet& M,
                             int size_cap, const ElemSet& test_ball,
                             std::size_t budget) {
  CheckResult res;
  auto supports = small_subsets(test_ball, size_cap, budget);
  std::size_t pairs_checked = 0;
  Exactness worst = Exactness::Exact;
  for (const auto& F : supports) {
    ElemSet D = F.set_union(set_product(F, M));
    ElemSet collar = D.set_minus(F);
    auto LD = language(oracle, D, budget);
    worst = std::max(worst, LD.exactness);
    for (const auto& x : LD.patterns)
      for (const auto& y : LD.patterns) {
        if (!(restrict(x, collar) == restrict(y, collar))) continue;
        ++pairs_checked;
        auto spliced = concat(restrict(x, F), restrict(y, collar));
        if (!pattern_in(LD.patterns, *spliced.pattern)) {
          res.pass = false;
          res.details["witness"] = {{"F", set_to_json(F)},
                                    {"x", x.to_json()},
                                    {"y", y.to_json()},
                                    {"splice", spliced.pattern->to_json()}};
          res.details["pairs_checked"] = pairs_checked;
          res.details["exactness"] = exactness_label(worst);
          return res;
        }
      }
  }
  res.details["pairs_checked"] = pairs_checked;
  res.details["supports_tested"] = supports.size();
  res.details["exactness"] = exactness_label(worst);
  return res;
}

CheckResult language_growth_check(const LanguageOracle& oracle,
                                  const ElemSet& K, const ElemSet& F,
                                  std::size_t budget) {
  CheckResult res;
  ElemSet one(oracle.spec.group, {oracle.spec.group->identity()});
  auto LF = language(oracle, F, budget);
  auto L1 = language(oracle, one, budget);
  long double lhs = static_cast<long double>(LF.patterns.size());
  long double exponent =
      static_cast<long double>(F.size()) / (2.0L * K.size());
  long double rhs =
      std::pow(static_cast<long double>(L1.patterns.size()), exponent);
  res.pass = lhs + 1e-9L >= rhs;
  res.details = {{"lhs", static_cast<double>(lhs)},
                 {"rhs", static_cast<double>(rhs)},
                 {"exponent", static_cast<double>(exponent)},
                 {"point_count", L1.patterns.size()},
                 {"exactness", exactness_label(LF.exactness)}};
  return res;
}

namespace {

/// Preimage of a finite subset of G inside H, by scanning balls of H.
ElemSet preimage_set(const SubgroupEmbedding& emb, const ElemSet& SG,
                     int radius_cap) {
  std::vector<Elem> out;
  for (const auto& g : SG.elems()) {
    bool found = false;
    for (int r = 0; r <= radius_cap && !found; ++r) {
      ElemSet hball = emb.H->ball(r);
      for (const auto& h : hball.elems())
        if (emb.embed(h) == g) {
          out.push_back(h);
          found = true;
          break;
        }
    }
    if (!found)
      throw std::invalid_argument(
          "declared constant is not contained in the subgroup");
  }
  return ElemSet(emb.H, std::move(out));
}

}  // namespace

LanguageOracle restrict_subshift(const LanguageOracle& ambient,
                                 const SubgroupEmbedding& emb) {
  LanguageOracle out;
  out.spec.group = emb.H;
  out.spec.alphabet = ambient.spec.alphabet;
  out.spec.kind = SubshiftKind::Oracle;
  int cap = 8;
  if (ambient.spec.si_constant)
    out.spec.si_constant = preimage_set(emb, *ambient.spec.si_constant, cap);
  if (ambient.spec.tmp_constant)
    out.spec.tmp_constant = preimage_set(emb, *ambient.spec.tmp_constant, cap);
  if (ambient.spec.fix)
    out.spec.fix = preimage_set(emb, *ambient.spec.fix, cap);
  out.margin = ambient.margin;
  out.ambient = std::make_shared<LanguageOracle>(ambient);
  out.embedding = std::make_shared<SubgroupEmbedding>(emb);
  return out;
}

}  // namespace sdtk
