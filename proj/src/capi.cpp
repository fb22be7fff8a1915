#include "sdtk.h"

#include <new>
#include <string>

#include "sdtk/commands.hpp"

struct sdtk_report {
  std::string text;
  int code = 3;
};

namespace {

thread_local std::string g_last_error;

}  // namespace

extern "C" {

int sdtk_run(const char* config_json, sdtk_report** out) {
  if (out) *out = nullptr;
  auto* handle = new (std::nothrow) sdtk_report;
  if (!handle) {
    g_last_error = "out of memory";
    return 3;
  }
  try {
    sdtk::json config =
        sdtk::json::parse(config_json ? config_json : "");
    sdtk::Report report = sdtk::run_command(config);
    handle->text = report.to_json().dump(2) + "\n";
    handle->code = report.exit_code();
    g_last_error.clear();
  } catch (const std::exception& e) {
    // Malformed JSON: synthesize a usage-error report with the location.
    g_last_error = e.what();
    sdtk::json doc = {{"command", ""},
                      {"verdict", "usage-error"},
                      {"details", {{"error", e.what()}}}};
    handle->text = doc.dump(2) + "\n";
    handle->code = 3;
  }
  int code = handle->code;
  if (out)
    *out = handle;
  else
    delete handle;
  return code;
}

const char* sdtk_report_json(const sdtk_report* r) {
  return r ? r->text.c_str() : "";
}

int sdtk_report_exit_code(const sdtk_report* r) { return r ? r->code : 3; }

void sdtk_report_free(sdtk_report* r) { delete r; }

const char* sdtk_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
