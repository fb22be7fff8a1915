#include <algorithm>
#include <chrono>
#include <set>

#include "sdtk/belt.hpp"
#include "sdtk/commands.hpp"
#include "sdtk/egg.hpp"
#include "sdtk/marker.hpp"
#include "sdtk/rule.hpp"

namespace sdtk {

namespace {

Elem z(int n) { return Elem{{n}}; }

SubshiftSpec full_shift_z(int n) {
  SubshiftSpec spec;
  spec.group = Group::integers();
  spec.alphabet = Alphabet::numeric(n);
  spec.kind = SubshiftKind::Full;
  return spec;
}

SubshiftSpec golden_mean_z() {
  SubshiftSpec spec;
  spec.group = Group::integers();
  spec.alphabet = Alphabet::numeric(2);
  spec.kind = SubshiftKind::Sft;
  ElemSet sup(spec.group, {z(0), z(1)});
  spec.forbidden.push_back(
      Pattern(spec.group, spec.alphabet, sup, {1, 1}));
  return spec;
}

// fib[i] = F(i) with F(1)=F(2)=1; the golden-mean word count on n cells
// is fib[n+2].
constexpr long long fib[] = {0, 1, 1, 2,  3,  5,  8,   13,  21,
                             34, 55, 89, 144, 233, 377, 610, 987};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// Overlap check written from scratch against the raw definition: p agrees
// with its g-translate wherever both are defined.
bool oracle_overlapping(const std::vector<int>& coords,
                        const std::vector<int>& vals, int g) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    int t = coords[i];
    auto it = std::find(coords.begin(), coords.end(), t - g);
    if (it == coords.end()) continue;
    if (vals[i] !=
        vals[static_cast<std::size_t>(it - coords.begin())])
      return false;
  }
  return true;  // includes the vacuous case
}

CriterionResult criterion_marker_search() {
  CriterionResult res{"marker-search-oracle", false, {}};
  auto t0 = std::chrono::steady_clock::now();
  LanguageOracle o{full_shift_z(2)};
  auto problem = MarkerProblem::make(
      o, ElemSet(o.spec.group, {z(0)}), o.spec.group->ball(2));
  std::vector<int> coords = {-2, -1, 1, 2};
  int markers = 0, agreements = 0;
  bool ok = true;
  for (int code = 0; code < 16; ++code) {
    std::vector<int> vals(4);
    for (int i = 0; i < 4; ++i) vals[static_cast<std::size_t>(i)] =
        (code >> (3 - i)) & 1;
    Pattern p(o.spec.group, o.spec.alphabet,
              ElemSet(o.spec.group, {z(-2), z(-1), z(1), z(2)}), vals);
    auto verdict = verify_marker(problem, p);
    bool module_pass = verdict.certificate.has_value();
    if (module_pass && !verdict.certificate->revalidate(o.spec.group))
      ok = false;
    bool oracle_pass = true;
    for (int g : {-2, -1, 1, 2})
      if (oracle_overlapping(coords, vals, g)) oracle_pass = false;
    if (module_pass == oracle_pass) ++agreements;
    if (module_pass) ++markers;
  }
  auto searched = search_marker(problem, SearchOptions{});
  double ms = ms_since(t0);
  res.details = {{"markers_found", markers},
                 {"oracle_agreements", agreements},
                 {"search_found", searched.found.has_value()},
                 {"runtime_ms", ms}};
  res.pass = ok && markers > 0 && agreements == 16 &&
             searched.found.has_value() && ms < 1000.0;
  return res;
}

CriterionResult criterion_vacuous_overlap() {
  CriterionResult res{"vacuous-overlap-window", false, {}};
  auto t0 = std::chrono::steady_clock::now();
  LanguageOracle o{full_shift_z(2)};
  auto problem = MarkerProblem::make(
      o, ElemSet(o.spec.group, {z(0)}), o.spec.group->ball(1));
  std::vector<int> coords = {-1, 1};
  bool all_fail_at_pm1 = true;
  for (int code = 0; code < 4; ++code) {
    std::vector<int> vals = {(code >> 1) & 1, code & 1};
    Pattern p(o.spec.group, o.spec.alphabet,
              ElemSet(o.spec.group, {z(-1), z(1)}), vals);
    auto verdict = verify_marker(problem, p);
    if (verdict.certificate) all_fail_at_pm1 = false;
    if (!verdict.overlapping_g ||
        std::abs(verdict.overlapping_g->c.at(0)) > 2)
      all_fail_at_pm1 = false;
    // Both shifts by one miss the support entirely, so the overlap is
    // vacuous there; re-derive that from scratch.
    for (int g : {-1, 1})
      if (!oracle_overlapping(coords, vals, g)) all_fail_at_pm1 = false;
  }
  auto searched = search_marker(problem, SearchOptions{});
  double ms = ms_since(t0);
  res.details = {{"search_exhaustive", searched.exhaustive},
                 {"search_found", searched.found.has_value()},
                 {"tried", searched.tried},
                 {"runtime_ms", ms}};
  res.pass = all_fail_at_pm1 && searched.exhaustive && !searched.found &&
             ms < 1000.0;
  return res;
}

CriterionResult criterion_feasibility() {
  CriterionResult res{"feasibility-arithmetic", false, {}};
  LanguageOracle o{full_shift_z(2)};
  ElemSet K(o.spec.group, {z(0)});
  // Direct recomputation: |B(38r)| = 76r+1 must drop below
  // 2^{|B(r-1)|} = 2^{2r-1}.
  int oracle_min_size = 0;
  for (int r = 1; r <= 64 && oracle_min_size == 0; ++r) {
    unsigned long long lhs = 76ull * static_cast<unsigned>(r) + 1;
    unsigned long long rhs =
        r <= 31 ? (1ull << (2 * r - 1)) : ~0ull;
    if (lhs < rhs) oracle_min_size = r;
  }
  int oracle_min_all = std::max(oracle_min_size, 16 * 1 * 1 + 2 * 1 + 1);
  int module_min_size = 0, module_min_all = 0;
  json at_min;
  for (int r = 1; r <= 64; ++r) {
    auto f = feasibility_conditions(o, K, 1, r);
    if (f.size_condition && module_min_size == 0) module_min_size = r;
    if (f.verdict && module_min_all == 0) {
      module_min_all = r;
      at_min = f.details;
      break;
    }
  }
  auto below = feasibility_conditions(o, K, 1, module_min_all - 1);
  res.details = {{"oracle_minimal_r_size", oracle_min_size},
                 {"module_minimal_r_size", module_min_size},
                 {"oracle_minimal_r_all", oracle_min_all},
                 {"module_minimal_r_all", module_min_all},
                 {"conditions_at_minimal_r", at_min},
                 {"all_conditions_fail_below", !below.verdict}};
  res.pass = module_min_size == oracle_min_size && oracle_min_size == 5 &&
             module_min_all == oracle_min_all && !below.verdict;
  return res;
}

CriterionResult criterion_language_counting() {
  CriterionResult res{"language-counting", false, {}};
  LanguageOracle gm{golden_mean_z()};
  // Same forbidden word over the rank-1 lattice, which routes through the
  // generic margin-extension enumeration instead of the transfer graph.
  SubshiftSpec lat;
  lat.group = Group::lattice(1);
  lat.alphabet = Alphabet::numeric(2);
  lat.kind = SubshiftKind::Sft;
  lat.forbidden.push_back(Pattern(lat.group, lat.alphabet,
                                  ElemSet(lat.group, {z(0), z(1)}), {1, 1}));
  LanguageOracle gm_lat{lat, 3};
  bool ok = true;
  json rows = json::array();
  for (int n = 1; n <= 10; ++n) {
    std::vector<Elem> cells;
    for (int i = 0; i < n; ++i) cells.push_back(z(i));
    auto transfer = language(gm, ElemSet(gm.spec.group, cells));
    auto enumerated = language(gm_lat, ElemSet(lat.group, cells));
    long long expect = fib[n + 2];
    rows.push_back(json{{"n", n},
                        {"transfer", transfer.patterns.size()},
                        {"transfer_exactness",
                         exactness_label(transfer.exactness)},
                        {"enumeration", enumerated.patterns.size()},
                        {"expected", expect}});
    if (static_cast<long long>(transfer.patterns.size()) != expect ||
        static_cast<long long>(enumerated.patterns.size()) != expect ||
        transfer.exactness != Exactness::Exact)
      ok = false;
  }
  res.details["counts"] = rows;
  res.pass = ok;
  return res;
}

CriterionResult criterion_growth_bound() {
  CriterionResult res{"growth-bound", false, {}};
  LanguageOracle full{full_shift_z(2)};
  LanguageOracle gm{golden_mean_z()};
  ElemSet K_full(full.spec.group, {z(0)});
  ElemSet K_gm = gm.spec.group->ball(1);
  bool ok = true;
  json rows = json::array();
  for (int r = 0; r <= 4; ++r) {
    ElemSet F = full.spec.group->ball(r);
    auto a = language_growth_check(full, K_full, F);
    auto b = language_growth_check(gm, K_gm, F);
    // Independent arithmetic: golden-mean count is a Fibonacci number and
    // the bound exponent is |F| / (2|K|).
    int cells = 2 * r + 1;
    bool recheck =
        std::log2(static_cast<long double>(fib[cells + 2])) >=
        static_cast<long double>(cells) / 6.0L - 1e-12L;
    rows.push_back(json{{"radius", r},
                        {"full_shift", a.pass},
                        {"golden_mean", b.pass},
                        {"golden_mean_recheck", recheck}});
    ok = ok && a.pass && b.pass && recheck;
  }
  res.details["rows"] = rows;
  res.pass = ok;
  return res;
}

std::vector<std::vector<int>> permutations_of(int n) {
  std::vector<int> sigma(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

CriterionResult criterion_egg_algebra() {
  CriterionResult res{"egg-algebra", false, {}};
  bool ok = true;
  json rows = json::array();
  for (int n : {2, 3}) {
    LanguageOracle o{full_shift_z(n)};
    auto E = build_linear_eggs(o, ElemSet(o.spec.group, {z(0)}),
                               o.spec.group->ball(2));
    auto verified = verify_egg_collection(o, E, ExchangeMode::FullShift);
    auto sigmas = permutations_of(static_cast<int>(E.size()));
    std::vector<LocalRule> rules;
    for (const auto& s : sigmas) rules.push_back(phi_sigma(E, s));
    bool homo = true, injective = true;
    for (std::size_t i = 0; i < sigmas.size(); ++i)
      for (std::size_t j = 0; j < sigmas.size(); ++j) {
        std::vector<int> st(E.size());
        for (std::size_t e = 0; e < E.size(); ++e)
          st[e] = sigmas[i][static_cast<std::size_t>(sigmas[j][e])];
        auto target = phi_sigma(E, st);
        auto cmp = equals_as_tables(compose(rules[i], rules[j]), target);
        homo = homo && cmp.equal;
        if (i < j)
          injective =
              injective && !equals_as_tables(rules[i], rules[j]).equal;
      }
    rows.push_back(json{{"eggs", E.size()},
                        {"collection_verified", verified.pass},
                        {"homomorphism", homo},
                        {"injective", injective}});
    ok = ok && verified.pass && homo && injective &&
         E.size() == static_cast<std::size_t>(n);
  }
  res.details["rows"] = rows;
  res.pass = ok;
  return res;
}

CriterionResult criterion_yolk_exchange() {
  CriterionResult res{"yolk-exchange", false, {}};
  auto spec = golden_mean_z();
  spec.tmp_constant = spec.group->ball(1);
  LanguageOracle gm{spec};
  // No marker on the radius-2 window leaves both yolk values admissible,
  // so the fixture pins the two-yolk white 010.001 on the radius-3 window.
  EggCollection E;
  E.Y = ElemSet(spec.group, {z(0)});
  E.W = spec.group->ball(3);
  E.fix = ElemSet(spec.group, {z(0)});
  E.white = Pattern(spec.group, spec.alphabet, E.W.set_minus(E.Y),
                    {0, 1, 0, 0, 0, 1});
  E.yolks = {Pattern(spec.group, spec.alphabet, E.Y, {0}),
             Pattern(spec.group, spec.alphabet, E.Y, {1})};
  auto verified = verify_egg_collection(gm, E, ExchangeMode::StrongTmp);
  bool ok = verified.pass && E.size() == 2;
  res.details["collection_verified"] = verified.pass;
  std::size_t windows_with_eggs = 0, reassignments = 0;
  for (int L = 1; L <= 12 && ok; ++L) {
    std::vector<Elem> cells;
    for (int i = 0; i < L; ++i) cells.push_back(z(i));
    ElemSet F(gm.spec.group, cells);
    auto lang = language(gm, F);
    std::set<std::vector<int>> admissible;
    for (const auto& p : lang.patterns) admissible.insert(p.values());
    for (const auto& w : lang.patterns) {
      Pattern model = eta(E, w);
      std::vector<Elem> spots;
      for (std::size_t i = 0; i < model.size(); ++i)
        if (model.values()[i] != E.star_symbol())
          spots.push_back(model.support().elems()[i]);
      if (spots.empty() || spots.size() > 2) continue;
      ++windows_with_eggs;
      std::size_t combos = 1;
      for (std::size_t i = 0; i < spots.size(); ++i) combos *= E.size();
      for (std::size_t combo = 0; combo < combos; ++combo) {
        std::vector<int> vals = w.values();
        std::size_t c = combo;
        for (const auto& g : spots) {
          std::size_t pick = c % E.size();
          c /= E.size();
          for (std::size_t yi = 0; yi < E.Y.size(); ++yi) {
            Elem cell = gm.spec.group->mul(g, E.Y.elems()[yi]);
            vals[static_cast<std::size_t>(w.support().index_of(cell))] =
                E.yolks[pick].values()[yi];
          }
        }
        ++reassignments;
        if (!admissible.count(vals)) ok = false;
      }
    }
  }
  res.details["windows_with_eggs"] = windows_with_eggs;
  res.details["reassignments_checked"] = reassignments;
  res.details["all_admissible"] = ok;
  res.pass = ok && reassignments > 0;
  return res;
}

CriterionResult criterion_slow_shift_roots() {
  CriterionResult res{"slow-shift-roots", false, {}};
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  json rows = json::array();
  for (const auto& g : {Group::integers(), Group::free_group(2)}) {
    Elem h = g->generators().front();
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3},
                                                        {3, 2}}) {
      auto root = slow_shift(g, n, k, h);
      LocalRule power = root.forward;
      for (int i = 1; i < k; ++i) power = compose(power, root.forward);
      auto cmp = equals_as_tables(
          power, tau(g, root.forward.in_alphabet(), h));
      auto inv_ok = equals_as_tables(
          compose(root.forward, root.inverse),
          LocalRule::identity(g, root.forward.in_alphabet()));
      rows.push_back(json{{"group", g->to_json().at("kind")},
                          {"n", n},
                          {"k", k},
                          {"kth_power_is_shift", cmp.equal},
                          {"inverse_ok", inv_ok.equal}});
      ok = ok && cmp.equal && inv_ok.equal;
    }
  }
  double ms = ms_since(t0);
  res.details["rows"] = rows;
  res.details["runtime_ms"] = ms;
  res.pass = ok && ms < 5000.0;
  return res;
}

CriterionResult criterion_center_probes() {
  CriterionResult res{"center-probes", false, {}};
  LanguageOracle o{full_shift_z(2)};
  auto g = o.spec.group;
  auto a = o.spec.alphabet;
  auto enumerated = enumerate_automorphisms(g, a, 1, 1);
  auto E = build_linear_eggs(o, ElemSet(g, {z(0)}), g->ball(2));
  auto verified = verify_egg_collection(o, E, ExchangeMode::FullShift);
  std::vector<LocalRule> probes;
  for (const auto& s : permutations_of(static_cast<int>(E.size())))
    probes.push_back(phi_sigma(E, s));
  std::vector<LocalRule> shifts = {tau(g, a, z(-1)),
                                   LocalRule::identity(g, a), tau(g, a, z(1))};
  bool ok = verified.pass && enumerated.automorphisms.size() == 6;
  int shift_count = 0, nonshift_failures = 0;
  for (const auto& aut : enumerated.automorphisms) {
    bool is_shift = false;
    for (const auto& s : shifts)
      if (equals_as_tables(aut.forward, s).equal) is_shift = true;
    auto probe_result = center_test(aut, probes, o);
    if (is_shift) {
      ++shift_count;
      if (!probe_result.failures.empty()) ok = false;
    } else {
      ++nonshift_failures;
      if (probe_result.failures.empty()) ok = false;
    }
  }
  res.details = {{"enumerated", enumerated.automorphisms.size()},
                 {"shifts_passing", shift_count},
                 {"nonshifts_failing", nonshift_failures},
                 {"collection_verified", verified.pass}};
  res.pass = ok && shift_count == 3 && nonshift_failures == 3;
  return res;
}

CriterionResult criterion_belt_orbits() {
  CriterionResult res{"belt-orbits", false, {}};
  auto Z = Group::integers();
  auto A = Alphabet::numeric(2);
  auto spec = ToyBeltSpec::make(Z, A, {z(-1), z(1)}, 1);
  // The permutation reads only pointers and belt membership, never track
  // values, so one representative per pointer combination plus one
  // non-belt symbol covers every window exhaustively.
  std::vector<int> reps;
  for (int bi = 0; bi < 2; ++bi)
    for (int fi = 0; fi < 2; ++fi) reps.push_back(spec.encode(bi, fi, 0, 0));
  reps.push_back(spec.belt_count());
  bool ok = true;
  std::size_t windows = 0, states_checked = 0;
  for (int L = 1; L <= 8 && ok; ++L) {
    std::vector<Elem> cells;
    for (int i = 0; i < L; ++i) cells.push_back(z(i));
    ElemSet sup(Z, cells);
    std::vector<std::size_t> digits(static_cast<std::size_t>(L), 0);
    bool more = true;
    while (more && ok) {
      std::vector<int> vals;
      for (auto d : digits) vals.push_back(reps[d]);
      Pattern w(Z, spec.belt_alpha, sup, vals);
      ++windows;
      std::vector<BeltState> all;
      for (int i = 0; i < L; ++i)
        for (bool top : {false, true}) all.push_back(BeltState{z(i), top});
      std::vector<BeltState> images;
      for (const auto& s : all) {
        ++states_checked;
        try {
          BeltState t = belt_step(spec, w, s);
          if (!(inverse_step(spec, w, t) == s)) ok = false;
          images.push_back(t);
        } catch (const WindowEdge&) {
        }
        try {
          BeltState t = inverse_step(spec, w, s);
          if (!(belt_step(spec, w, t) == s)) ok = false;
        } catch (const WindowEdge&) {
        }
      }
      for (std::size_t i = 0; i + 1 < images.size() && ok; ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
          if (images[i] == images[j]) ok = false;
      // Orbits must partition the state set.
      std::vector<BeltState> seen;
      for (const auto& s : all) {
        if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
        auto orbit = orbit_classify(spec, w, s);
        for (const auto& t : orbit.states) {
          if (std::find(seen.begin(), seen.end(), t) != seen.end()) ok = false;
          seen.push_back(t);
        }
      }
      std::size_t i = digits.size();
      while (i > 0 && digits[i - 1] == reps.size() - 1) digits[--i] = 0;
      if (i == 0)
        more = false;
      else
        ++digits[i - 1];
    }
  }
  res.details["bijectivity"] =
      json{{"windows", windows}, {"states", states_checked}, {"ok", ok}};

  // Homomorphism of the track-rewriting embedding.
  LocalRule id = LocalRule::identity(Z, A);
  LocalRule flip(Z, A, A, ElemSet(Z, {z(0)}), std::vector<int>{1, 0});
  LocalRule sigma(Z, A, A, ElemSet(Z, {z(1)}), std::vector<int>{0, 1});
  LocalRule flip_sigma = compose(flip, sigma);
  std::vector<LocalRule> phis = {id, flip, sigma, flip_sigma};
  bool homo = equals_as_tables(psi_toy(spec, id), LocalRule::identity(
                                                      Z, spec.belt_alpha))
                  .equal;
  for (const auto& p1 : phis)
    for (const auto& p2 : phis) {
      auto lhs = psi_toy(spec, compose(p1, p2), 1u << 21);
      auto rhs = compose(psi_toy(spec, p1), psi_toy(spec, p2), 1u << 21);
      if (!equals_as_tables(lhs, rhs, 1u << 25).equal) homo = false;
    }
  res.details["homomorphism"] = homo;

  auto witness = toy_injectivity_witness(spec, flip, compose(sigma, flip));
  bool distinguished = witness && witness->out1 != witness->out2;
  res.details["injectivity_witness"] = distinguished;
  if (witness)
    res.details["witness_outputs"] = {witness->out1, witness->out2};

  res.pass = ok && homo && distinguished;
  return res;
}

CriterionResult criterion_fat_free_group() {
  CriterionResult res{"fat-free-group", false, {}};
  auto F2 = Group::free_group(2);
  ElemSet T = F2->ball(1);
  auto r = fat_free_group(F2, T, {Elem{{1}}, Elem{{2}}}, 6, 2);
  // Independent recount of the disjointness over plain element sets.
  std::vector<Elem> ws{F2->identity()};
  std::vector<Elem> gens = {Elem{{1, 1, 1}}, Elem{{2, 2, 2}}};
  for (std::size_t len = 1; len <= 2; ++len) {
    std::vector<Elem> next;
    for (const auto& w : ws)
      if (F2->word_length(w) == static_cast<int>(3 * (len - 1)))
        for (const auto& g : gens)
          for (const auto& x : {g, F2->inv(g)}) {
            Elem e = F2->mul(w, x);
            if (F2->word_length(e) == static_cast<int>(3 * len))
              next.push_back(e);
          }
    ws.insert(ws.end(), next.begin(), next.end());
  }
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  bool recheck = ws.size() == 17;
  for (std::size_t i = 0; i < ws.size() && recheck; ++i)
    for (std::size_t j = i + 1; j < ws.size(); ++j) {
      std::set<Elem> s1, s2;
      for (const auto& t : T.elems()) s1.insert(F2->mul(ws[i], t));
      for (const auto& t : T.elems()) s2.insert(F2->mul(ws[j], t));
      for (const auto& e : s1)
        if (s2.count(e)) recheck = false;
    }
  res.details = r.details;
  res.details["independent_recheck"] = recheck;
  res.pass = r.n0 == 3 && r.conclusive && r.disjoint && recheck &&
             r.gammas[0] == (Elem{{1, 1, 1}}) &&
             r.gammas[1] == (Elem{{2, 2, 2}});
  return res;
}

CriterionResult criterion_boundary_fixture() {
  CriterionResult res{"boundary-fixture", false, {}};
  auto F2 = Group::free_group(2);
  std::vector<Elem> letters = {Elem{{1}}, Elem{{-1}}, Elem{{2}}, Elem{{-2}}};
  std::vector<std::string> names;
  for (const auto& l : letters) names.push_back(F2->format(l));
  auto A = std::make_shared<Alphabet>(names);
  SubshiftSpec spec;
  spec.group = F2;
  spec.alphabet = A;
  spec.kind = SubshiftKind::Sft;
  auto letter_index = [&](const Elem& e) {
    return static_cast<int>(std::find(letters.begin(), letters.end(), e) -
                            letters.begin());
  };
  // Seeing t at g forces s^{-1} at gs for every letter s != t.
  for (int t = 0; t < 4; ++t)
    for (int s = 0; s < 4; ++s) {
      if (s == t) continue;
      for (int u = 0; u < 4; ++u) {
        if (letters[static_cast<std::size_t>(u)] ==
            F2->inv(letters[static_cast<std::size_t>(s)]))
          continue;
        ElemSet sup(F2,
                    {F2->identity(), letters[static_cast<std::size_t>(s)]});
        std::vector<int> vals(2);
        vals[static_cast<std::size_t>(
            sup.index_of(F2->identity()))] = t;
        vals[static_cast<std::size_t>(
            sup.index_of(letters[static_cast<std::size_t>(s)]))] = u;
        spec.forbidden.push_back(Pattern(F2, A, sup, vals));
      }
    }
  LanguageOracle o{spec};
  auto lang = language(o, F2->ball(2), 1u << 22);
  bool ok = !lang.patterns.empty();
  for (const auto& p : lang.patterns) {
    int t = p.at(F2->identity());
    for (int s = 0; s < 4 && ok; ++s) {
      if (s == t) continue;
      const Elem& se = letters[static_cast<std::size_t>(s)];
      if (p.at(se) != letter_index(F2->inv(se))) ok = false;
      for (const auto& ae : letters) {
        if (ae == F2->inv(se)) continue;  // sa must stay reduced
        if (p.at(F2->mul(se, ae)) != letter_index(F2->inv(ae))) ok = false;
      }
    }
  }
  res.details = {{"patterns", lang.patterns.size()},
                 {"exactness", exactness_label(lang.exactness)},
                 {"cone_pointing", ok}};
  res.pass = ok;
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite() {
  return {
      criterion_marker_search(),   criterion_vacuous_overlap(),
      criterion_feasibility(),     criterion_language_counting(),
      criterion_growth_bound(),    criterion_egg_algebra(),
      criterion_yolk_exchange(),   criterion_slow_shift_roots(),
      criterion_center_probes(),   criterion_belt_orbits(),
      criterion_fat_free_group(),  criterion_boundary_fixture(),
  };
}

}  // namespace sdtk
