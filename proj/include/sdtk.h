#ifndef SDTK_H
#define SDTK_H

/* C interface to the symbolic-dynamics toolkit. All functionality is
 * reached through sdtk_run: one JSON config in, one JSON report out. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sdtk_report sdtk_report;

/* Runs the command described by config_json and stores a report handle in
 * *out. The return value doubles as the process exit code: 0 pass, 1 fail
 * with witness, 2 inconclusive, 3 usage error. *out is NULL only when
 * allocation fails; errors in the config are reported through a verdict,
 * not a null handle. */
int sdtk_run(const char* config_json, sdtk_report** out);

/* Pretty-printed JSON document of the report. Owned by the handle. */
const char* sdtk_report_json(const sdtk_report* r);

int sdtk_report_exit_code(const sdtk_report* r);

void sdtk_report_free(sdtk_report* r);

/* Message of the last error that escaped the library on this thread, or
 * an empty string. */
const char* sdtk_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* SDTK_H */
