#include "sdtk/marker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace sdtk {

MarkerProblem MarkerProblem::make(LanguageOracle oracle, ElemSet Y,
                                  ElemSet W) {
  if (!Y.subset_of(W) || Y.size() >= W.size())
    throw std::invalid_argument("Y must be a proper subset of W");
  MarkerProblem p;
  p.fix_was_declared = oracle.spec.fix.has_value();
  p.fix = p.fix_was_declared
              ? *oracle.spec.fix
              : ElemSet(oracle.spec.group, {oracle.spec.group->identity()});
  p.oracle = std::move(oracle);
  p.Y = std::move(Y);
  p.W = std::move(W);
  return p;
}

json MarkerCertificate::to_json() const {
  const auto& g = pattern.group();
  json w = json::array();
  for (const auto& [gg, hh] : witnesses)
    w.push_back({{"g", g->elem_to_json(gg)}, {"h", g->elem_to_json(hh)}});
  return json{{"pattern", pattern.to_json()},
              {"witnesses", w},
              {"admissibility", exactness_label(admissibility)}};
}

bool MarkerCertificate::revalidate(const GroupPtr& g) const {
  for (const auto& [gg, hh] : witnesses) {
    auto at_h = pattern.maybe_at(hh);
    auto at_pre = pattern.maybe_at(g->mul(g->inv(gg), hh));
    if (!at_h || !at_pre || *at_h == *at_pre) return false;
  }
  return true;
}

namespace {

ElemSet overlap_test_set(const MarkerProblem& problem) {
  return set_product(problem.W, set_inverse(problem.Y))
      .set_minus(problem.fix);
}

/// Non-overlap witnesses for p over the whole test set, or the first g
/// where p overlaps itself.
std::optional<Elem> collect_witnesses(
    const Pattern& p, const ElemSet& test_set,
    std::vector<std::pair<Elem, Elem>>& out) {
  for (const auto& g : test_set.elems()) {
    auto h = overlap_disagreement(p, g);
    if (!h) return g;
    out.emplace_back(g, *h);
  }
  return std::nullopt;
}

}  // namespace

MarkerVerifyResult verify_marker(const MarkerProblem& problem,
                                 const Pattern& p, std::size_t budget) {
  ElemSet support = problem.W.set_minus(problem.Y);
  if (!(p.support() == support))
    throw std::invalid_argument("pattern support is not W minus Y");
  auto lang = language(problem.oracle, support, budget);
  bool member = false;
  for (const auto& q : lang.patterns)
    if (q == p) {
      member = true;
      break;
    }
  if (!member) throw std::invalid_argument("pattern is not admissible");
  MarkerCertificate cert{p, {}, lang.exactness};
  auto bad = collect_witnesses(p, overlap_test_set(problem), cert.witnesses);
  if (bad) return MarkerVerifyResult{std::nullopt, *bad};
  return MarkerVerifyResult{std::move(cert), std::nullopt};
}

MarkerSearchResult search_marker(const MarkerProblem& problem,
                                 const SearchOptions& opts) {
  ElemSet support = problem.W.set_minus(problem.Y);
  auto lang = language(problem.oracle, support, opts.budget);
  ElemSet test_set = overlap_test_set(problem);
  MarkerSearchResult res;

  auto passes = [&](const Pattern& p) {
    for (const auto& g : test_set.elems())
      if (is_g_overlapping(p, g)) return false;
    return true;
  };
  auto certify = [&](const Pattern& p) {
    MarkerCertificate cert{p, {}, lang.exactness};
    collect_witnesses(p, test_set, cert.witnesses);
    return cert;
  };

  if (opts.strategy == SearchStrategy::Lexicographic) {
    int workers = std::max(1, opts.workers);
    if (workers > 1 && lang.patterns.size() > 64) {
      // Partition the candidate list; the winner is the smallest passing
      // index, so the result matches the sequential scan.
      std::atomic<std::size_t> best{lang.patterns.size()};
      std::atomic<std::size_t> tried{0};
      std::vector<std::thread> pool;
      std::size_t chunk = (lang.patterns.size() + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          std::size_t lo = w * chunk;
          std::size_t hi = std::min(lang.patterns.size(), lo + chunk);
          for (std::size_t i = lo; i < hi; ++i) {
            if (best.load() < lo) return;
            tried.fetch_add(1);
            if (passes(lang.patterns[i])) {
              std::size_t cur = best.load();
              while (i < cur && !best.compare_exchange_weak(cur, i)) {
              }
              return;
            }
          }
        });
      }
      for (auto& t : pool) t.join();
      res.tried = tried.load();
      std::size_t idx = best.load();
      if (idx < lang.patterns.size())
        res.found = certify(lang.patterns[idx]);
      else
        res.exhaustive = true;
      return res;
    }
    for (const auto& p : lang.patterns) {
      ++res.tried;
      if (passes(p)) {
        res.found = certify(p);
        return res;
      }
    }
    res.exhaustive = true;
    return res;
  }

  std::mt19937_64 rng(opts.seed);
  if (lang.patterns.empty()) return res;
  std::uniform_int_distribution<std::size_t> dist(0,
                                                  lang.patterns.size() - 1);
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const auto& p = lang.patterns[dist(rng)];
    ++res.tried;
    if (passes(p)) {
      res.found = certify(p);
      return res;
    }
  }
  return res;
}

MarkerVerifyResult complete_marker(const MarkerProblem& problem,
                                   const Pattern& p, const ElemSet& Yp,
                                   const Pattern& q, std::size_t budget) {
  if (!Yp.subset_of(problem.Y))
    throw std::invalid_argument("Y' must be contained in Y");
  ElemSet big_support = problem.W.set_minus(Yp);
  if (!(q.support() == big_support))
    throw std::invalid_argument("completion support is not W minus Y'");
  ElemSet small_support = problem.W.set_minus(problem.Y);
  if (!(restrict(q, small_support) == p))
    throw std::invalid_argument("completion disagrees with the marker");
  auto base = verify_marker(problem, p, budget);
  if (!base.certificate)
    throw std::invalid_argument("base pattern is not a marker at (Y,W)");
  MarkerProblem refined = problem;
  refined.Y = Yp;
  return verify_marker(refined, q, budget);
}

namespace {

/// Sphere sizes |{g : |g| = i}| for i = 0..n, as long doubles so huge
/// groups stay representable.
std::vector<long double> sphere_counts(const GroupPtr& g, int n) {
  std::vector<long double> s(static_cast<std::size_t>(n) + 1, 0.0L);
  switch (g->kind()) {
    case GroupKind::Integers:
      s[0] = 1;
      for (int i = 1; i <= n; ++i) s[static_cast<std::size_t>(i)] = 2;
      break;
    case GroupKind::Lattice: {
      std::vector<long double> cur{1.0L};  // d = 0
      cur.resize(s.size(), 0.0L);
      for (int d = 0; d < g->dim(); ++d) {
        std::vector<long double> next(s.size(), 0.0L);
        for (int i = 0; i <= n; ++i)
          for (int j = 0; i + j <= n; ++j)
            next[static_cast<std::size_t>(i + j)] +=
                cur[static_cast<std::size_t>(i)] * (j == 0 ? 1.0L : 2.0L);
        cur = std::move(next);
      }
      s = std::move(cur);
      break;
    }
    case GroupKind::Free: {
      s[0] = 1;
      long double k2 = 2.0L * g->dim();
      if (n >= 1) s[1] = k2;
      for (int i = 2; i <= n; ++i)
        s[static_cast<std::size_t>(i)] =
            s[static_cast<std::size_t>(i - 1)] * (k2 - 1.0L);
      break;
    }
    case GroupKind::FiniteTable: {
      auto diam = g->diameter();
      int top = std::min(n, diam.value_or(n));
      std::size_t prev = 0;
      for (int i = 0; i <= top; ++i) {
        std::size_t b = g->ball(i).size();
        s[static_cast<std::size_t>(i)] = static_cast<long double>(b - prev);
        prev = b;
      }
      break;
    }
    case GroupKind::Product: {
      auto ls = sphere_counts(g->left(), n);
      auto rs = sphere_counts(g->right(), n);
      for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
          s[static_cast<std::size_t>(i + j)] +=
              ls[static_cast<std::size_t>(i)] * rs[static_cast<std::size_t>(j)];
      break;
    }
  }
  return s;
}

long double ball_count(const GroupPtr& g, int n) {
  auto s = sphere_counts(g, n);
  long double total = 0;
  for (long double x : s) total += x;
  return total;
}

}  // namespace

long double ball_log2_count(const GroupPtr& g, int n) {
  return std::log2(ball_count(g, n));
}

CountEstimate language_log2_count(const LanguageOracle& oracle,
                                  const ElemSet& F,
                                  const std::optional<ElemSet>& K,
                                  std::size_t budget) {
  const auto& spec = oracle.spec;
  CountEstimate est;
  if (!oracle.ambient &&
      (spec.kind == SubshiftKind::Full || spec.forbidden.empty())) {
    est.log2_count = static_cast<long double>(F.size()) *
                     std::log2(static_cast<long double>(spec.alphabet->size()));
    est.method = "formula";
    return est;
  }
  if (!oracle.ambient && spec.group->kind() == GroupKind::Integers &&
      spec.kind == SubshiftKind::Sft && !F.empty()) {
    int mn = F.elems().front().c[0];
    int mx = F.elems().back().c[0];
    if (mx - mn + 1 == static_cast<int>(F.size())) {
      est.log2_count = z_interval_log2_count(spec, mx - mn + 1, budget);
      est.method = "transfer";
      return est;
    }
  }
  try {
    auto lang = language(oracle, F, budget);
    if (lang.exactness == Exactness::Exact) {
      est.log2_count =
          std::log2(static_cast<long double>(lang.patterns.size()));
      est.method = "enumeration";
      return est;
    }
  } catch (const BudgetExceeded&) {
  }
  if (!K)
    throw std::invalid_argument(
        "language count infeasible and no K for the growth lower bound");
  ElemSet one(spec.group, {spec.group->identity()});
  long double l1 =
      static_cast<long double>(language_count(oracle, one, budget));
  est.log2_count = std::log2(l1) * static_cast<long double>(F.size()) /
                   (2.0L * static_cast<long double>(K->size()));
  est.method = "growth";
  est.lower_bound = true;
  return est;
}

FeasibilityResult feasibility_conditions(const LanguageOracle& oracle,
                                         const ElemSet& K, int k, int r,
                                         std::size_t budget) {
  const auto& g = oracle.spec.group;
  FeasibilityResult res;
  long double lhs = ball_log2_count(g, 38 * r);
  int inner = std::max(r - k, 0);

  CountEstimate rhs;
  long double inner_ball = ball_count(g, inner);
  if (inner_ball <= static_cast<long double>(budget)) {
    rhs = language_log2_count(oracle, g->ball(inner, budget),
                              std::optional<ElemSet>(K), budget);
  } else if (oracle.spec.kind == SubshiftKind::Full ||
             (oracle.spec.kind == SubshiftKind::Sft &&
              oracle.spec.forbidden.empty())) {
    rhs.log2_count =
        inner_ball *
        std::log2(static_cast<long double>(oracle.spec.alphabet->size()));
    rhs.method = "formula";
  } else {
    ElemSet one(g, {g->identity()});
    long double l1 =
        static_cast<long double>(language_count(oracle, one, budget));
    rhs.log2_count =
        std::log2(l1) * inner_ball / (2.0L * static_cast<long double>(K.size()));
    rhs.method = "growth";
    rhs.lower_bound = true;
  }
  res.size_condition = lhs < rhs.log2_count;

  auto diam = g->diameter();
  res.diameter_condition = !diam || *diam > 38 * r;

  ElemSet K3 = set_product(set_product(K, K), K);
  long long bound = 16LL * k * static_cast<long long>(K3.size()) + 2LL * k;
  res.radius_condition = r > bound;

  res.verdict =
      res.size_condition && res.diameter_condition && res.radius_condition;
  res.details = {
      {"log2_ball_38r", static_cast<double>(lhs)},
      {"log2_language_inner", static_cast<double>(rhs.log2_count)},
      {"language_count_method", rhs.method},
      {"language_count_is_lower_bound", rhs.lower_bound},
      {"inner_radius", inner},
      {"diameter",
       diam ? json(*diam) : json("infinite")},
      {"radius_bound", bound},
      {"K_cubed_size", K3.size()}};
  return res;
}

}  // namespace sdtk
