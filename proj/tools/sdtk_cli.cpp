#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdtk.h"

using json = nlohmann::json;

namespace {

// Inline JSON when the value looks like a document, a file path otherwise.
json json_arg(const std::string& v) {
  if (!v.empty() && (v.front() == '{' || v.front() == '[' ||
                     v.front() == '"' || std::isdigit(v.front())))
    return json::parse(v);
  std::ifstream f(v);
  if (!f) throw CLI::ValidationError("cannot open file: " + v);
  return json::parse(f);
}

// Element forms are numbers/arrays for integer-like groups and plain words
// for free groups.
json elem_arg(const std::string& v) {
  try {
    return json::parse(v);
  } catch (const json::exception&) {
    return json(v);
  }
}

json g_config;
std::string g_out = "-";

int run_configured() {
  if (g_config.is_null()) {
    std::cerr << "no subcommand given; see --help\n";
    return 3;
  }
  if (!g_config.contains("budget")) {
    if (const char* env = std::getenv("SDTK_BUDGET"))
      g_config["budget"] = std::strtoull(env, nullptr, 10);
  }
  sdtk_report* rep = nullptr;
  int code = sdtk_run(g_config.dump().c_str(), &rep);
  std::string text = sdtk_report_json(rep);
  sdtk_report_free(rep);
  if (g_out.empty() || g_out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(g_out);
    if (!f) {
      std::cerr << "cannot write report to " << g_out << "\n";
      return 3;
    }
    f << text;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic-dynamics toolkit"};
  app.require_subcommand(0, 1);
  app.add_option("--out", g_out, "report destination, - for stdout");
  std::size_t budget = 0;
  auto* budget_opt =
      app.add_option("--budget", budget, "enumeration budget override");

  auto finish = [&](json config) {
    if (budget_opt->count()) config["budget"] = budget;
    g_config = std::move(config);
  };

  // group
  auto* group = app.add_subcommand("group", "group arithmetic");
  {
    auto* ball = group->add_subcommand("ball", "enumerate a ball or set");
    auto g = std::make_shared<std::string>();
    auto set = std::make_shared<std::string>();
    auto radius = std::make_shared<int>(0);
    ball->add_option("--group", *g, "group spec (file or inline)")
        ->required();
    auto* set_opt = ball->add_option("--set", *set, "set expression");
    auto* r_opt = ball->add_option("--radius", *radius, "ball radius");
    ball->callback([=]() {
      json c{{"command", "group.ball"}, {"group", json_arg(*g)}};
      if (set_opt->count()) c["set"] = *set;
      if (r_opt->count()) c["radius"] = *radius;
      finish(std::move(c));
    });

    auto* check = group->add_subcommand("check", "validate a group spec");
    auto g2 = std::make_shared<std::string>();
    check->add_option("--group", *g2, "group spec")->required();
    check->callback([=]() {
      finish(json{{"command", "group.check"}, {"group", json_arg(*g2)}});
    });
  }

  // subshift
  auto* subshift = app.add_subcommand("subshift", "language queries");
  {
    auto spec = std::make_shared<std::string>();
    auto support = std::make_shared<std::string>();
    auto margin = std::make_shared<int>(1);
    auto list_max = std::make_shared<std::size_t>(64);
    auto* lang = subshift->add_subcommand("language", "admissible patterns");
    lang->add_option("--spec", *spec, "subshift spec")->required();
    lang->add_option("--support", *support, "set expression")->required();
    lang->add_option("--margin", *margin, "coherence margin");
    lang->add_option("--list-max", *list_max, "max patterns listed");
    lang->callback([=]() {
      finish(json{{"command", "subshift.language"},
                  {"spec", json_arg(*spec)},
                  {"support", *support},
                  {"margin", *margin},
                  {"list_max", *list_max}});
    });

    auto spec2 = std::make_shared<std::string>();
    auto K = std::make_shared<std::string>();
    auto cap = std::make_shared<int>(2);
    auto tb = std::make_shared<std::string>();
    auto* si = subshift->add_subcommand("check-si",
                                        "strong irreducibility test");
    si->add_option("--spec", *spec2)->required();
    auto* K_opt = si->add_option("--K", *K, "constant set expression");
    si->add_option("--size-cap", *cap, "max support size per side");
    si->add_option("--test-ball", *tb, "ground set expression")->required();
    si->callback([=]() {
      json c{{"command", "subshift.check-si"},
             {"spec", json_arg(*spec2)},
             {"size_cap", *cap},
             {"test_ball", *tb}};
      if (K_opt->count()) c["K"] = *K;
      finish(std::move(c));
    });

    auto spec3 = std::make_shared<std::string>();
    auto M = std::make_shared<std::string>();
    auto cap3 = std::make_shared<int>(2);
    auto tb3 = std::make_shared<std::string>();
    auto* tmp = subshift->add_subcommand("check-tmp",
                                         "strong Markov property test");
    tmp->add_option("--spec", *spec3)->required();
    auto* M_opt = tmp->add_option("--M", *M, "constant set expression");
    tmp->add_option("--size-cap", *cap3, "max support size");
    tmp->add_option("--test-ball", *tb3)->required();
    tmp->callback([=]() {
      json c{{"command", "subshift.check-tmp"},
             {"spec", json_arg(*spec3)},
             {"size_cap", *cap3},
             {"test_ball", *tb3}};
      if (M_opt->count()) c["M"] = *M;
      finish(std::move(c));
    });

    auto spec4 = std::make_shared<std::string>();
    auto K4 = std::make_shared<std::string>();
    auto F4 = std::make_shared<std::string>();
    auto* growth = subshift->add_subcommand("growth",
                                            "language growth lower bound");
    growth->add_option("--spec", *spec4)->required();
    auto* K4_opt = growth->add_option("--K", *K4);
    growth->add_option("--F", *F4, "support set expression")->required();
    growth->callback([=]() {
      json c{{"command", "subshift.growth"},
             {"spec", json_arg(*spec4)},
             {"F", *F4}};
      if (K4_opt->count()) c["K"] = *K4;
      finish(std::move(c));
    });
  }

  // marker
  auto* marker = app.add_subcommand("marker", "marker search and checks");
  {
    auto spec = std::make_shared<std::string>();
    auto Y = std::make_shared<std::string>();
    auto W = std::make_shared<std::string>();
    auto strategy = std::make_shared<std::string>("lex");
    auto seed = std::make_shared<std::uint64_t>(0);
    auto trials = std::make_shared<std::size_t>(1000);
    auto workers = std::make_shared<int>(1);
    auto* search = marker->add_subcommand("search", "find a marker");
    search->add_option("--spec", *spec)->required();
    search->add_option("--Y", *Y, "inner set expression")->required();
    search->add_option("--W", *W, "window set expression")->required();
    search->add_option("--strategy", *strategy, "lex or random");
    search->add_option("--seed", *seed);
    search->add_option("--trials", *trials);
    search->add_option("--workers", *workers);
    search->callback([=]() {
      finish(json{{"command", "marker.search"},
                  {"spec", json_arg(*spec)},
                  {"Y", *Y},
                  {"W", *W},
                  {"strategy", *strategy},
                  {"seed", *seed},
                  {"trials", *trials},
                  {"workers", *workers}});
    });

    auto spec2 = std::make_shared<std::string>();
    auto Y2 = std::make_shared<std::string>();
    auto W2 = std::make_shared<std::string>();
    auto pat = std::make_shared<std::string>();
    auto* verify = marker->add_subcommand("verify", "certify one pattern");
    verify->add_option("--spec", *spec2)->required();
    verify->add_option("--Y", *Y2)->required();
    verify->add_option("--W", *W2)->required();
    verify->add_option("--pattern", *pat, "pattern JSON")->required();
    verify->callback([=]() {
      finish(json{{"command", "marker.verify"},
                  {"spec", json_arg(*spec2)},
                  {"Y", *Y2},
                  {"W", *W2},
                  {"pattern", json_arg(*pat)}});
    });

    auto spec3 = std::make_shared<std::string>();
    auto K3 = std::make_shared<std::string>();
    auto kk = std::make_shared<int>(1);
    auto rr = std::make_shared<int>(0);
    auto scan = std::make_shared<int>(64);
    auto* feas = marker->add_subcommand("feasibility",
                                        "marker existence arithmetic");
    feas->add_option("--spec", *spec3)->required();
    auto* K3_opt = feas->add_option("--K", *K3);
    feas->add_option("--k", *kk, "separation constant");
    auto* r_opt = feas->add_option("--r", *rr, "evaluate a single radius");
    feas->add_option("--scan-max", *scan, "radius scan bound");
    feas->callback([=]() {
      json c{{"command", "marker.feasibility"},
             {"spec", json_arg(*spec3)},
             {"k", *kk},
             {"scan_max", *scan}};
      if (K3_opt->count()) c["K"] = *K3;
      if (r_opt->count()) c["r"] = *rr;
      finish(std::move(c));
    });
  }

  // egg
  auto* egg = app.add_subcommand("egg", "egg collections");
  {
    auto spec = std::make_shared<std::string>();
    auto Y = std::make_shared<std::string>();
    auto W = std::make_shared<std::string>();
    auto* build = egg->add_subcommand("build", "maximal linear collection");
    build->add_option("--spec", *spec)->required();
    build->add_option("--Y", *Y)->required();
    build->add_option("--W", *W)->required();
    build->callback([=]() {
      finish(json{{"command", "egg.build"},
                  {"spec", json_arg(*spec)},
                  {"Y", *Y},
                  {"W", *W}});
    });

    auto spec2 = std::make_shared<std::string>();
    auto coll = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("full-shift");
    auto* verify = egg->add_subcommand("verify", "check a collection");
    verify->add_option("--spec", *spec2)->required();
    verify->add_option("--collection", *coll)->required();
    verify->add_option("--mode", *mode,
                       "full-shift, strong-tmp, or declared");
    verify->callback([=]() {
      finish(json{{"command", "egg.verify"},
                  {"spec", json_arg(*spec2)},
                  {"collection", json_arg(*coll)},
                  {"mode", *mode}});
    });

    auto spec3 = std::make_shared<std::string>();
    auto coll3 = std::make_shared<std::string>();
    auto window = std::make_shared<std::string>();
    auto sigma = std::make_shared<std::vector<int>>();
    auto* act = egg->add_subcommand("act", "permute yolks in a window");
    act->add_option("--spec", *spec3)->required();
    act->add_option("--collection", *coll3)->required();
    act->add_option("--window", *window, "pattern JSON")->required();
    act->add_option("--sigma", *sigma, "permutation images")->required();
    act->callback([=]() {
      finish(json{{"command", "egg.act"},
                  {"spec", json_arg(*spec3)},
                  {"collection", json_arg(*coll3)},
                  {"window", json_arg(*window)},
                  {"sigma", *sigma}});
    });

    auto spec4 = std::make_shared<std::string>();
    auto coll4 = std::make_shared<std::string>();
    auto phi = std::make_shared<std::string>();
    auto* lift = egg->add_subcommand("lift",
                                     "lift an egg-model automorphism");
    lift->add_option("--spec", *spec4)->required();
    lift->add_option("--collection", *coll4)->required();
    lift->add_option("--phi", *phi, "local rule JSON")->required();
    lift->callback([=]() {
      finish(json{{"command", "egg.lift"},
                  {"spec", json_arg(*spec4)},
                  {"collection", json_arg(*coll4)},
                  {"phi", json_arg(*phi)}});
    });
  }

  // aut
  auto* aut = app.add_subcommand("aut", "local-rule automorphisms");
  {
    auto r1 = std::make_shared<std::string>();
    auto r2 = std::make_shared<std::string>();
    auto* comp = aut->add_subcommand("compose", "rule composition");
    comp->add_option("--rule1", *r1)->required();
    comp->add_option("--rule2", *r2)->required();
    comp->callback([=]() {
      finish(json{{"command", "aut.compose"},
                  {"rule1", json_arg(*r1)},
                  {"rule2", json_arg(*r2)}});
    });

    auto pair = std::make_shared<std::string>();
    auto* verify = aut->add_subcommand("verify",
                                       "forward/inverse consistency");
    verify->add_option("--automorphism", *pair)->required();
    verify->callback([=]() {
      finish(json{{"command", "aut.verify"},
                  {"automorphism", json_arg(*pair)}});
    });

    auto asize = std::make_shared<int>(2);
    auto radius = std::make_shared<int>(1);
    auto inv_radius = std::make_shared<int>(-1);
    auto* en = aut->add_subcommand("enumerate",
                                   "all automorphisms of bounded radius");
    en->add_option("--alphabet-size", *asize);
    en->add_option("--radius", *radius)->required();
    auto* inv_opt = en->add_option("--inv-radius", *inv_radius);
    en->callback([=]() {
      json c{{"command", "aut.enumerate"},
             {"alphabet_size", *asize},
             {"radius", *radius}};
      if (inv_opt->count()) c["inv_radius"] = *inv_radius;
      finish(std::move(c));
    });

    auto spec = std::make_shared<std::string>();
    auto cand = std::make_shared<std::string>();
    auto Y = std::make_shared<std::string>();
    auto W = std::make_shared<std::string>();
    auto coll = std::make_shared<std::string>();
    auto* center = aut->add_subcommand("center", "commutation probes");
    center->add_option("--spec", *spec)->required();
    center->add_option("--candidate", *cand)->required();
    auto* Y_opt = center->add_option("--Y", *Y);
    auto* W_opt = center->add_option("--W", *W);
    auto* coll_opt = center->add_option("--collection", *coll);
    center->callback([=]() {
      json c{{"command", "aut.center"},
             {"spec", json_arg(*spec)},
             {"candidate", json_arg(*cand)}};
      if (coll_opt->count()) c["collection"] = json_arg(*coll);
      if (Y_opt->count()) c["Y"] = *Y;
      if (W_opt->count()) c["W"] = *W;
      finish(std::move(c));
    });

    auto g = std::make_shared<std::string>();
    auto n = std::make_shared<int>(2);
    auto k = std::make_shared<int>(2);
    auto h = std::make_shared<std::string>();
    auto verify_flag = std::make_shared<bool>(true);
    auto* slow = aut->add_subcommand("slowshift", "k-th root of a shift");
    auto* g_opt = slow->add_option("--group", *g, "group spec");
    slow->add_option("--n", *n, "base alphabet size")->required();
    slow->add_option("--k", *k, "root degree")->required();
    auto* h_opt = slow->add_option("--shift", *h, "shift element");
    slow->add_flag("--verify,!--no-verify", *verify_flag,
                   "check the k-th power");
    slow->callback([=]() {
      json c{{"command", "aut.slowshift"},
             {"n", *n},
             {"k", *k},
             {"verify", *verify_flag}};
      if (g_opt->count()) c["group"] = json_arg(*g);
      if (h_opt->count()) c["h"] = elem_arg(*h);
      finish(std::move(c));
    });
  }

  // belt
  auto* belt = app.add_subcommand("belt", "conveyor belts");
  {
    auto spec = std::make_shared<std::string>();
    auto window = std::make_shared<std::string>();
    auto start = std::make_shared<std::string>();
    auto track = std::make_shared<std::string>("top");
    auto max_steps = std::make_shared<int>(0);
    auto* cls = belt->add_subcommand("classify", "orbit of a state");
    cls->add_option("--belt", *spec)->required();
    cls->add_option("--window", *window)->required();
    cls->add_option("--start", *start, "starting position")->required();
    cls->add_option("--track", *track, "top or bottom");
    cls->add_option("--max-steps", *max_steps);
    cls->callback([=]() {
      finish(json{{"command", "belt.classify"},
                  {"belt", json_arg(*spec)},
                  {"window", json_arg(*window)},
                  {"start", *start},
                  {"top", *track == "top"},
                  {"max_steps", *max_steps}});
    });

    auto spec2 = std::make_shared<std::string>();
    auto window2 = std::make_shared<std::string>();
    auto at = std::make_shared<std::string>();
    auto track2 = std::make_shared<std::string>("top");
    auto positions = std::make_shared<std::string>();
    auto* tr = belt->add_subcommand("trace", "read symbols along an orbit");
    tr->add_option("--belt", *spec2)->required();
    tr->add_option("--window", *window2)->required();
    tr->add_option("--at", *at, "starting position")->required();
    tr->add_option("--track", *track2);
    tr->add_option("--positions", *positions, "integer set expression")
        ->required();
    tr->callback([=]() {
      finish(json{{"command", "belt.trace"},
                  {"belt", json_arg(*spec2)},
                  {"window", json_arg(*window2)},
                  {"at", *at},
                  {"top", *track2 == "top"},
                  {"positions", *positions}});
    });

    auto spec3 = std::make_shared<std::string>();
    auto phi = std::make_shared<std::string>();
    auto window3 = std::make_shared<std::string>();
    auto* psi = belt->add_subcommand("psi", "embed a track automorphism");
    psi->add_option("--belt", *spec3)->required();
    psi->add_option("--phi", *phi, "local rule JSON")->required();
    auto* w_opt = psi->add_option("--window", *window3);
    psi->callback([=]() {
      json c{{"command", "belt.psi"},
             {"belt", json_arg(*spec3)},
             {"phi", json_arg(*phi)}};
      if (w_opt->count()) c["window"] = json_arg(*window3);
      finish(std::move(c));
    });

    auto g = std::make_shared<std::string>();
    auto T = std::make_shared<std::string>();
    auto images = std::make_shared<std::vector<std::string>>();
    auto cap = std::make_shared<int>(6);
    auto tl = std::make_shared<int>(2);
    auto* fat = belt->add_subcommand("fatfree",
                                     "disjoint translate family");
    fat->add_option("--group", *g)->required();
    fat->add_option("--T", *T, "set expression")->required();
    fat->add_option("--images", *images, "generator images")->required();
    fat->add_option("--length-cap", *cap);
    fat->add_option("--test-len", *tl);
    fat->callback([=]() {
      json imgs = json::array();
      for (const auto& s : *images) imgs.push_back(elem_arg(s));
      finish(json{{"command", "belt.fatfree"},
                  {"group", json_arg(*g)},
                  {"T", *T},
                  {"images", imgs},
                  {"length_cap", *cap},
                  {"test_len", *tl}});
    });
  }

  // suite
  auto* suite = app.add_subcommand("suite", "acceptance batteries");
  suite->add_subcommand("run", "run every criterion")->callback([&]() {
    finish(json{{"command", "suite.run"}});
  });

  CLI11_PARSE(app, argc, argv);
  return run_configured();
}
