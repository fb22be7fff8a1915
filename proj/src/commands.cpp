#include "sdtk/commands.hpp"

#include <chrono>

#include "sdtk/belt.hpp"
#include "sdtk/egg.hpp"
#include "sdtk/marker.hpp"
#include "sdtk/rule.hpp"

namespace sdtk {

namespace {

std::size_t budget_of(const json& c, std::size_t dflt = 1u << 20) {
  return c.value("budget", dflt);
}

ElemSet set_arg(const GroupPtr& g, const json& v, std::size_t budget) {
  if (v.is_string()) return parse_set_expr(g, v.get<std::string>(), budget);
  return set_from_json(g, v);
}

LanguageOracle oracle_arg(const json& c) {
  LanguageOracle o;
  o.spec = SubshiftSpec::from_json(c.at("spec"));
  o.margin = c.value("margin", 1);
  auto problems = o.spec.validate();
  if (!problems.empty())
    throw std::invalid_argument("invalid subshift spec: " + problems.front());
  return o;
}

json patterns_json(const std::vector<Pattern>& ps, std::size_t list_max) {
  json arr = json::array();
  for (const auto& p : ps) {
    if (arr.size() >= list_max) break;
    arr.push_back(p.to_json());
  }
  return arr;
}

void cmd_group_ball(const json& c, Report& r) {
  auto g = Group::from_json(c.at("group"));
  ElemSet s = c.contains("set")
                  ? set_arg(g, c.at("set"), budget_of(c))
                  : g->ball(c.at("radius").get<int>(), budget_of(c));
  json elems = json::array();
  for (const auto& e : s.elems()) elems.push_back(g->format(e));
  r.details["count"] = s.size();
  r.details["elements"] = elems;
  r.verdict = Verdict::Pass;
}

void cmd_group_check(const json& c, Report& r) {
  GroupPtr g;
  try {
    g = Group::from_json(c.at("group"));
  } catch (const std::invalid_argument& e) {
    r.verdict = Verdict::Fail;
    r.details["witness"] = e.what();
    return;
  }
  json gens = json::array();
  for (const auto& e : g->generators()) gens.push_back(g->format(e));
  r.details["generators"] = gens;
  r.details["abelian"] = g->is_abelian();
  auto d = g->diameter();
  r.details["diameter"] = d ? json(*d) : json("infinite");
  r.verdict = Verdict::Pass;
}

void cmd_subshift_language(const json& c, Report& r) {
  auto o = oracle_arg(c);
  ElemSet F = set_arg(o.spec.group, c.at("support"), budget_of(c));
  LanguageResult res;
  try {
    res = language(o, F, budget_of(c));
  } catch (const std::invalid_argument& e) {
    // Declared-oracle subshifts have no computable language.
    r.verdict = Verdict::Inconclusive;
    r.details["reason"] = e.what();
    return;
  }
  r.details["count"] = res.patterns.size();
  r.details["exactness"] = exactness_label(res.exactness);
  std::size_t list_max = c.value("list_max", std::size_t{64});
  if (res.patterns.size() <= list_max)
    r.details["patterns"] = patterns_json(res.patterns, list_max);
  r.verdict = Verdict::Pass;
}

void finish_check(const CheckResult& res, Report& r) {
  r.details = res.details;
  r.verdict = res.pass ? Verdict::Pass : Verdict::Fail;
}

void cmd_subshift_check_si(const json& c, Report& r) {
  auto o = oracle_arg(c);
  ElemSet K = c.contains("K") ? set_arg(o.spec.group, c.at("K"), budget_of(c))
                              : o.spec.si_constant.value();
  ElemSet ball = set_arg(o.spec.group, c.at("test_ball"), budget_of(c));
  finish_check(check_strong_irreducibility(o, K, c.value("size_cap", 2), ball,
                                           budget_of(c)),
               r);
}

void cmd_subshift_check_tmp(const json& c, Report& r) {
  auto o = oracle_arg(c);
  ElemSet M = c.contains("M") ? set_arg(o.spec.group, c.at("M"), budget_of(c))
                              : o.spec.tmp_constant.value();
  ElemSet ball = set_arg(o.spec.group, c.at("test_ball"), budget_of(c));
  finish_check(check_strong_tmp(o, M, c.value("size_cap", 2), ball,
                                budget_of(c)),
               r);
}

void cmd_subshift_growth(const json& c, Report& r) {
  auto o = oracle_arg(c);
  ElemSet K = c.contains("K") ? set_arg(o.spec.group, c.at("K"), budget_of(c))
                              : o.spec.si_constant.value();
  ElemSet F = set_arg(o.spec.group, c.at("F"), budget_of(c));
  finish_check(language_growth_check(o, K, F, budget_of(c)), r);
}

MarkerProblem problem_arg(const json& c) {
  auto o = oracle_arg(c);
  ElemSet Y = set_arg(o.spec.group, c.at("Y"), budget_of(c));
  ElemSet W = set_arg(o.spec.group, c.at("W"), budget_of(c));
  return MarkerProblem::make(std::move(o), std::move(Y), std::move(W));
}

void cmd_marker_search(const json& c, Report& r) {
  auto problem = problem_arg(c);
  SearchOptions opts;
  std::string strategy = c.value("strategy", "lex");
  if (strategy == "lex")
    opts.strategy = SearchStrategy::Lexicographic;
  else if (strategy == "random")
    opts.strategy = SearchStrategy::Random;
  else
    throw std::invalid_argument("unknown strategy: " + strategy);
  opts.seed = c.value("seed", std::uint64_t{0});
  opts.trials = c.value("trials", std::size_t{1000});
  opts.budget = budget_of(c);
  opts.workers = c.value("workers", 1);
  auto res = search_marker(problem, opts);
  r.details["tried"] = res.tried;
  r.details["fix_declared"] = problem.fix_was_declared;
  if (res.found) {
    r.details["certificate"] = res.found->to_json();
    r.verdict = Verdict::Pass;
  } else if (res.exhaustive) {
    r.details["witness"] = "no admissible pattern on W minus Y is a marker";
    r.verdict = Verdict::Fail;
  } else {
    r.details["reason"] = "sampling exhausted without a find";
    r.verdict = Verdict::Inconclusive;
  }
}

void cmd_marker_verify(const json& c, Report& r) {
  auto problem = problem_arg(c);
  Pattern p = Pattern::from_json(problem.oracle.spec.group,
                                 problem.oracle.spec.alphabet,
                                 c.at("pattern"));
  auto res = verify_marker(problem, p, budget_of(c));
  r.details["fix_declared"] = problem.fix_was_declared;
  if (res.certificate) {
    r.details["certificate"] = res.certificate->to_json();
    r.verdict = Verdict::Pass;
  } else {
    r.details["overlapping_g"] =
        problem.oracle.spec.group->format(*res.overlapping_g);
    r.verdict = Verdict::Fail;
  }
}

void cmd_marker_feasibility(const json& c, Report& r) {
  auto o = oracle_arg(c);
  ElemSet K = c.contains("K") ? set_arg(o.spec.group, c.at("K"), budget_of(c))
                              : o.spec.si_constant.value();
  int k = c.value("k", 1);
  if (c.contains("r")) {
    auto res = feasibility_conditions(o, K, k, c.at("r").get<int>(),
                                      budget_of(c));
    r.details = res.details;
    r.verdict = res.verdict ? Verdict::Pass : Verdict::Fail;
    return;
  }
  int scan_max = c.value("scan_max", 64);
  int min_size_r = 0, min_all_r = 0;
  for (int r_try = 1; r_try <= scan_max; ++r_try) {
    auto res = feasibility_conditions(o, K, k, r_try, budget_of(c));
    if (res.size_condition && min_size_r == 0) min_size_r = r_try;
    if (res.verdict && min_all_r == 0) {
      min_all_r = r_try;
      r.details["conditions_at_minimal_r"] = res.details;
      break;
    }
  }
  r.details["minimal_r_size_condition"] = min_size_r;
  r.details["minimal_r_all_conditions"] = min_all_r;
  r.verdict = min_all_r > 0 ? Verdict::Pass : Verdict::Inconclusive;
}

void cmd_egg_build(const json& c, Report& r) {
  auto o = oracle_arg(c);
  ElemSet Y = set_arg(o.spec.group, c.at("Y"), budget_of(c));
  ElemSet W = set_arg(o.spec.group, c.at("W"), budget_of(c));
  EggCollection E;
  try {
    E = build_linear_eggs(o, Y, W, budget_of(c));
  } catch (const std::runtime_error& e) {
    r.details["witness"] = e.what();
    r.verdict = Verdict::Fail;
    return;
  }
  r.details["collection"] = E.to_json();
  r.details["size"] = E.size();
  r.verdict = Verdict::Pass;
}

ExchangeMode mode_arg(const json& c) {
  std::string m = c.value("mode", "full-shift");
  if (m == "full-shift") return ExchangeMode::FullShift;
  if (m == "strong-tmp") return ExchangeMode::StrongTmp;
  if (m == "declared") return ExchangeMode::Declared;
  throw std::invalid_argument("unknown exchange mode: " + m);
}

void cmd_egg_verify(const json& c, Report& r) {
  auto o = oracle_arg(c);
  auto E = EggCollection::from_json(o.spec.group, o.spec.alphabet,
                                    c.at("collection"));
  finish_check(verify_egg_collection(o, E, mode_arg(c), budget_of(c)), r);
}

void cmd_egg_act(const json& c, Report& r) {
  auto o = oracle_arg(c);
  auto E = EggCollection::from_json(o.spec.group, o.spec.alphabet,
                                    c.at("collection"));
  Pattern w = Pattern::from_json(o.spec.group, o.spec.alphabet,
                                 c.at("window"));
  std::vector<int> sigma = c.at("sigma").get<std::vector<int>>();
  auto rule = phi_sigma(E, sigma, budget_of(c));
  Pattern before_eta = eta(E, w);
  Pattern after = apply(rule, w);
  Pattern after_eta = eta(E, after);
  r.details["before"] = w.to_json();
  r.details["eta_before"] = before_eta.to_json();
  r.details["after"] = after.to_json();
  r.details["eta_after"] = after_eta.to_json();
  r.verdict = Verdict::Pass;
}

void cmd_egg_lift(const json& c, Report& r) {
  auto o = oracle_arg(c);
  auto E = EggCollection::from_json(o.spec.group, o.spec.alphabet,
                                    c.at("collection"));
  LocalRule phi = LocalRule::from_json(c.at("phi"));
  LocalRule lifted;
  try {
    lifted = lift_egg_automorphism(E, phi, budget_of(c));
  } catch (const std::invalid_argument& e) {
    r.details["witness"] = e.what();
    r.verdict = Verdict::Fail;
    return;
  }
  if (lifted.table_size() <= static_cast<long double>(budget_of(c)))
    r.details["lifted"] = lifted.to_json(budget_of(c));
  else
    r.details["lifted_memory"] = set_to_json(lifted.memory());
  r.verdict = Verdict::Pass;
}

void cmd_aut_compose(const json& c, Report& r) {
  LocalRule r1 = LocalRule::from_json(c.at("rule1"));
  LocalRule r2 = LocalRule::from_json(c.at("rule2"));
  LocalRule comp = compose(r1, r2, budget_of(c));
  r.details["composed"] = comp.to_json(budget_of(c));
  r.verdict = Verdict::Pass;
}

void cmd_aut_verify(const json& c, Report& r) {
  auto aut = RuleAutomorphism::from_json(c.at("automorphism"));
  LocalRule id = LocalRule::identity(aut.forward.group(),
                                     aut.forward.in_alphabet());
  auto fwd_inv = equals_as_tables(compose(aut.forward, aut.inverse), id,
                                  budget_of(c, 1u << 24));
  auto inv_fwd = equals_as_tables(compose(aut.inverse, aut.forward), id,
                                  budget_of(c, 1u << 24));
  r.details["forward_after_inverse_is_identity"] = fwd_inv.equal;
  r.details["inverse_after_forward_is_identity"] = inv_fwd.equal;
  if (fwd_inv.equal && inv_fwd.equal) {
    r.verdict = Verdict::Pass;
  } else {
    const auto& bad = fwd_inv.equal ? inv_fwd : fwd_inv;
    r.details["witness_values"] = *bad.witness_values;
    r.verdict = Verdict::Fail;
  }
}

void cmd_aut_enumerate(const json& c, Report& r) {
  auto g = c.contains("group") ? Group::from_json(c.at("group"))
                               : Group::integers();
  auto a = c.contains("alphabet")
               ? Alphabet::from_json(c.at("alphabet"))
               : Alphabet::numeric(c.value("alphabet_size", 2));
  int radius = c.at("radius").get<int>();
  int inv_radius = c.value("inv_radius", radius);
  auto res = enumerate_automorphisms(g, a, radius, inv_radius,
                                     budget_of(c, 1u << 24));
  r.details["count"] = res.automorphisms.size();
  r.details["tables_scanned"] = res.tables_scanned;
  r.details["inconclusive_rejections"] = res.inconclusive_rejections;
  json list = json::array();
  for (const auto& aut : res.automorphisms)
    list.push_back(aut.forward.to_json(budget_of(c, 1u << 24)).at("table"));
  r.details["forward_tables"] = list;
  r.verdict = Verdict::Pass;
}

void cmd_aut_center(const json& c, Report& r) {
  auto o = oracle_arg(c);
  auto candidate = RuleAutomorphism::from_json(c.at("candidate"));
  auto E = c.contains("collection")
               ? EggCollection::from_json(o.spec.group, o.spec.alphabet,
                                          c.at("collection"))
               : build_linear_eggs(
                     o, set_arg(o.spec.group, c.at("Y"), budget_of(c)),
                     set_arg(o.spec.group, c.at("W"), budget_of(c)),
                     budget_of(c));
  if (E.size() > 5) throw BudgetExceeded("too many eggs for probe family");
  std::vector<int> sigma(E.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = static_cast<int>(i);
  std::vector<LocalRule> probes;
  do {
    probes.push_back(phi_sigma(E, sigma, budget_of(c)));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  auto res = center_test(candidate, probes, o, budget_of(c));
  r.details["probes_run"] = res.probes_run;
  if (res.failures.empty()) {
    r.details["consistent_with_central"] = true;
    r.verdict = Verdict::Pass;
  } else {
    json fails = json::array();
    for (const auto& [idx, w] : res.failures)
      fails.push_back(json{{"probe", idx}, {"window", w.to_json()}});
    r.details["failures"] = fails;
    r.verdict = Verdict::Fail;
  }
}

void cmd_aut_slowshift(const json& c, Report& r) {
  auto g = c.contains("group") ? Group::from_json(c.at("group"))
                               : Group::integers();
  int n = c.at("n").get<int>();
  int k = c.at("k").get<int>();
  Elem h = c.contains("h") ? g->elem_from_json(c.at("h"))
                           : g->generators().front();
  auto root = slow_shift(g, n, k, h);
  r.details["rule"] = root.to_json(budget_of(c));
  if (c.value("verify", true)) {
    LocalRule power = root.forward;
    for (int i = 1; i < k; ++i) power = compose(power, root.forward);
    auto cmp = equals_as_tables(
        power, tau(g, root.forward.in_alphabet(), h), budget_of(c, 1u << 24));
    r.details["kth_power_is_shift"] = cmp.equal;
    if (!cmp.equal) {
      r.details["witness_values"] = *cmp.witness_values;
      r.verdict = Verdict::Fail;
      return;
    }
  }
  r.verdict = Verdict::Pass;
}

json orbit_json(const ToyBeltSpec& spec, const OrbitResult& orbit) {
  json states = json::array();
  for (const auto& s : orbit.states)
    states.push_back(json{{"pos", spec.group->format(s.pos)},
                          {"track", s.top ? "top" : "bottom"}});
  return json{{"label", orbit.label},
              {"length", orbit.length},
              {"turns", orbit.turns},
              {"states", states}};
}

void cmd_belt_classify(const json& c, Report& r) {
  auto spec = ToyBeltSpec::from_json(c.at("belt"));
  Pattern w = Pattern::from_json(spec.group, spec.belt_alpha, c.at("window"));
  BeltState start{spec.group->parse(c.at("start").get<std::string>()),
                  c.value("top", true)};
  auto orbit = orbit_classify(spec, w, start, c.value("max_steps", 0));
  r.details["orbit"] = orbit_json(spec, orbit);
  r.verdict = Verdict::Pass;
}

void cmd_belt_trace(const json& c, Report& r) {
  auto spec = ToyBeltSpec::from_json(c.at("belt"));
  Pattern w = Pattern::from_json(spec.group, spec.belt_alpha, c.at("window"));
  Elem g = spec.group->parse(c.at("at").get<std::string>());
  ElemSet positions =
      set_arg(Group::integers(), c.at("positions"), budget_of(c));
  Pattern t = trace(spec, w, g, c.value("top", true), positions);
  r.details["trace"] = t.to_json();
  r.verdict = Verdict::Pass;
}

void cmd_belt_psi(const json& c, Report& r) {
  auto spec = ToyBeltSpec::from_json(c.at("belt"));
  LocalRule phi = LocalRule::from_json(c.at("phi"));
  LocalRule psi = psi_toy(spec, phi, budget_of(c));
  if (psi.table_size() <= static_cast<long double>(budget_of(c)))
    r.details["psi"] = psi.to_json(budget_of(c));
  else
    r.details["psi_memory"] = set_to_json(psi.memory());
  if (c.contains("window")) {
    Pattern w = Pattern::from_json(spec.group, spec.belt_alpha,
                                   c.at("window"));
    r.details["before"] = w.to_json();
    r.details["after"] = apply(psi, w).to_json();
  }
  r.verdict = Verdict::Pass;
}

void cmd_belt_fatfree(const json& c, Report& r) {
  auto g = Group::from_json(c.at("group"));
  ElemSet T = set_arg(g, c.at("T"), budget_of(c));
  std::vector<Elem> images;
  for (const auto& e : c.at("images")) images.push_back(g->elem_from_json(e));
  auto res = fat_free_group(g, T, images, c.value("length_cap", 6),
                            c.value("test_len", 2));
  r.details = res.details;
  json gs = json::array();
  for (const auto& e : res.gammas) gs.push_back(g->format(e));
  r.details["gammas"] = gs;
  r.details["disjoint"] = res.disjoint;
  r.details["conclusive"] = res.conclusive;
  if (!res.disjoint)
    r.verdict = Verdict::Fail;
  else if (!res.conclusive)
    r.verdict = Verdict::Inconclusive;
  else
    r.verdict = Verdict::Pass;
}

void cmd_suite_run(const json&, Report& r) {
  auto results = run_acceptance_suite();
  json list = json::array();
  bool all = true;
  for (const auto& res : results) {
    list.push_back(json{{"name", res.name},
                        {"pass", res.pass},
                        {"details", res.details}});
    all = all && res.pass;
  }
  r.details["criteria"] = list;
  r.details["passed"] =
      std::count_if(results.begin(), results.end(),
                    [](const CriterionResult& x) { return x.pass; });
  r.details["total"] = results.size();
  r.verdict = all ? Verdict::Pass : Verdict::Fail;
}

using Handler = void (*)(const json&, Report&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"group.ball", cmd_group_ball},
      {"group.check", cmd_group_check},
      {"subshift.language", cmd_subshift_language},
      {"subshift.check-si", cmd_subshift_check_si},
      {"subshift.check-tmp", cmd_subshift_check_tmp},
      {"subshift.growth", cmd_subshift_growth},
      {"marker.search", cmd_marker_search},
      {"marker.verify", cmd_marker_verify},
      {"marker.feasibility", cmd_marker_feasibility},
      {"egg.build", cmd_egg_build},
      {"egg.verify", cmd_egg_verify},
      {"egg.act", cmd_egg_act},
      {"egg.lift", cmd_egg_lift},
      {"aut.compose", cmd_aut_compose},
      {"aut.verify", cmd_aut_verify},
      {"aut.enumerate", cmd_aut_enumerate},
      {"aut.center", cmd_aut_center},
      {"aut.slowshift", cmd_aut_slowshift},
      {"belt.classify", cmd_belt_classify},
      {"belt.trace", cmd_belt_trace},
      {"belt.psi", cmd_belt_psi},
      {"belt.fatfree", cmd_belt_fatfree},
      {"suite.run", cmd_suite_run},
  };
  return h;
}

}  // namespace

Report run_command(const json& config) {
  Report r;
  r.config = config;
  auto start = std::chrono::steady_clock::now();
  try {
    r.command = config.at("command").get<std::string>();
    auto it = handlers().find(r.command);
    if (it == handlers().end())
      throw std::invalid_argument("unknown command: " + r.command);
    it->second(config, r);
  } catch (const BudgetExceeded& e) {
    r.verdict = Verdict::Inconclusive;
    r.details["reason"] = e.what();
  } catch (const WindowEdge& e) {
    r.verdict = Verdict::Inconclusive;
    r.details["reason"] = e.what();
  } catch (const json::exception& e) {
    r.verdict = Verdict::Usage;
    r.details["error"] = e.what();
  } catch (const std::exception& e) {
    r.verdict = Verdict::Usage;
    r.details["error"] = e.what();
  }
  auto end = std::chrono::steady_clock::now();
  r.wall_time_ms =
      std::chrono::duration<double, std::milli>(end - start).count();
  return r;
}

}  // namespace sdtk
