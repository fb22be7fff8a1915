#include <doctest.h>

#include "sdtk/commands.hpp"

using namespace sdtk;

namespace {

json gm_spec() {
  return json{{"group", {{"kind", "integers"}}},
              {"alphabet", {"0", "1"}},
              {"kind", "sft"},
              {"forbidden",
               {{{"support", {0, 1}}, {"values", {"1", "1"}}}}}};
}

json full_spec() {
  return json{{"group", {{"kind", "integers"}}},
              {"alphabet", {"0", "1"}},
              {"kind", "full"}};
}

}  // namespace

TEST_CASE("unknown commands are usage errors") {
  Report r = run_command(json{{"command", "nope"}});
  CHECK(r.verdict == Verdict::Usage);
  CHECK(r.exit_code() == 3);
}

TEST_CASE("missing fields are usage errors") {
  Report r = run_command(json{{"command", "group.ball"}});
  CHECK(r.verdict == Verdict::Usage);
}

TEST_CASE("group ball listing") {
  Report r = run_command(json{{"command", "group.ball"},
                              {"group", {{"kind", "integers"}}},
                              {"radius", 2}});
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.details.at("count") == 5);
}

TEST_CASE("language verdicts") {
  Report r = run_command(json{{"command", "subshift.language"},
                              {"spec", gm_spec()},
                              {"support", "B(2)"}});
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.details.at("count") == 13);
  CHECK(r.details.at("exactness") == "exact");

  json oracle_spec = {{"group", {{"kind", "integers"}}},
                      {"alphabet", {"0", "1"}},
                      {"kind", "oracle"}};
  Report r2 = run_command(json{{"command", "subshift.language"},
                               {"spec", oracle_spec},
                               {"support", "B(1)"}});
  CHECK(r2.verdict == Verdict::Inconclusive);
  CHECK(r2.exit_code() == 2);
}

TEST_CASE("marker search and failure exit codes") {
  json base = {{"command", "marker.search"},
               {"spec", full_spec()},
               {"Y", "[0]"},
               {"W", "B(2)"},
               {"strategy", "lex"}};
  Report found = run_command(base);
  CHECK(found.verdict == Verdict::Pass);
  CHECK(found.details.contains("certificate"));

  base["W"] = "B(1)";
  Report missing = run_command(base);
  CHECK(missing.verdict == Verdict::Fail);
  CHECK(missing.exit_code() == 1);
}

TEST_CASE("feasibility scan finds minimal radii") {
  Report r = run_command(json{{"command", "marker.feasibility"},
                              {"spec", full_spec()},
                              {"K", "[0]"},
                              {"k", 1}});
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.details.at("minimal_r_size_condition") == 5);
  CHECK(r.details.at("minimal_r_all_conditions") == 19);
}

TEST_CASE("slow shift verification command") {
  Report r = run_command(json{{"command", "aut.slowshift"},
                              {"n", 2},
                              {"k", 2},
                              {"verify", true}});
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.details.at("kth_power_is_shift") == true);
}

TEST_CASE("budget overruns are inconclusive") {
  Report r = run_command(json{{"command", "group.ball"},
                              {"group", {{"kind", "free"},
                                         {"params", {{"k", 2}}}}},
                              {"radius", 20},
                              {"budget", 100}});
  CHECK(r.verdict == Verdict::Inconclusive);
}

TEST_CASE("reports are deterministic up to wall time") {
  json config = {{"command", "subshift.growth"},
                 {"spec", gm_spec()},
                 {"K", "B(1)"},
                 {"F", "B(2)"}};
  Report a = run_command(config);
  Report b = run_command(config);
  json ja = a.to_json();
  json jb = b.to_json();
  ja.erase("wall_time_ms");
  jb.erase("wall_time_ms");
  CHECK(ja.dump() == jb.dump());
  CHECK(a.config_hash() == b.config_hash());
}
