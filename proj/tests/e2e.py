#!/usr/bin/env python3
"""End-to-end CLI checks against golden reports.

Each case runs one subcommand, strips wall-clock fields from the report,
and compares the result byte-for-byte with the stored golden file.
"""

import argparse
import json
import subprocess
import sys
from pathlib import Path

CASES = [
    ("group_ball", 0,
     ["group", "ball", "--group", '{"kind": "integers"}', "--radius", "2"]),
    ("group_check", 0,
     ["group", "check", "--group", "{f2.json}"]),
    ("subshift_language", 0,
     ["subshift", "language", "--spec", "{gm.json}", "--support", "B(2)"]),
    ("subshift_language_oracle", 2,
     ["subshift", "language", "--spec", "{oracle.json}",
      "--support", "B(1)"]),
    ("subshift_check_si", 0,
     ["subshift", "check-si", "--spec", "{gm.json}", "--K", "B(1)",
      "--size-cap", "2", "--test-ball", "B(4)"]),
    ("subshift_check_tmp", 0,
     ["subshift", "check-tmp", "--spec", "{gm.json}", "--M", "B(1)",
      "--size-cap", "2", "--test-ball", "B(4)"]),
    ("subshift_growth", 0,
     ["subshift", "growth", "--spec", "{gm.json}", "--K", "B(1)",
      "--F", "B(2)"]),
    ("marker_search", 0,
     ["marker", "search", "--spec", "{full2.json}", "--Y", "[0]",
      "--W", "B(2)", "--strategy", "lex"]),
    ("marker_search_absent", 1,
     ["marker", "search", "--spec", "{full2.json}", "--Y", "[0]",
      "--W", "B(1)", "--strategy", "lex"]),
    ("marker_verify", 0,
     ["marker", "verify", "--spec", "{full2.json}", "--Y", "[0]",
      "--W", "B(2)", "--pattern", "{marker_pattern.json}"]),
    ("marker_feasibility", 0,
     ["marker", "feasibility", "--spec", "{full2.json}", "--K", "[0]",
      "--k", "1"]),
    ("egg_build", 0,
     ["egg", "build", "--spec", "{full2.json}", "--Y", "[0]",
      "--W", "B(2)"]),
    ("egg_verify", 0,
     ["egg", "verify", "--spec", "{full2.json}",
      "--collection", "{eggs2.json}", "--mode", "full-shift"]),
    ("egg_act", 0,
     ["egg", "act", "--spec", "{full2.json}",
      "--collection", "{eggs2.json}", "--window", "{window9.json}",
      "--sigma", "1", "0"]),
    ("egg_lift", 0,
     ["egg", "lift", "--spec", "{full2.json}",
      "--collection", "{eggs2.json}", "--phi", "{eggswap_rule.json}"]),
    ("aut_compose", 0,
     ["aut", "compose", "--rule1", "{flip_rule.json}",
      "--rule2", "{shift_rule.json}"]),
    ("aut_verify", 0,
     ["aut", "verify", "--automorphism", "{shift_aut.json}"]),
    ("aut_enumerate", 0,
     ["aut", "enumerate", "--alphabet-size", "2", "--radius", "1"]),
    ("aut_center_shift", 0,
     ["aut", "center", "--spec", "{full2.json}",
      "--candidate", "{shift_aut.json}", "--Y", "[0]", "--W", "B(2)"]),
    ("aut_center_flip", 1,
     ["aut", "center", "--spec", "{full2.json}",
      "--candidate", "{flip_aut.json}", "--Y", "[0]", "--W", "B(2)"]),
    ("aut_slowshift", 0,
     ["aut", "slowshift", "--n", "2", "--k", "2", "--verify"]),
    ("belt_classify", 0,
     ["belt", "classify", "--belt", "{belt.json}",
      "--window", "{beltwin.json}", "--start", "1", "--track", "top"]),
    ("belt_trace", 0,
     ["belt", "trace", "--belt", "{belt.json}",
      "--window", "{beltwin.json}", "--at", "1", "--track", "top",
      "--positions", "[0, 1, 2, 3, 4, 5]"]),
    ("belt_psi", 0,
     ["belt", "psi", "--belt", "{belt.json}", "--phi", "{flip_rule.json}",
      "--window", "{beltwin.json}"]),
    ("belt_fatfree", 0,
     ["belt", "fatfree", "--group", "{f2.json}", "--T", "B(1)",
      "--images", "a", "--images", "b",
      "--length-cap", "6", "--test-len", "2"]),
    ("suite_run", 0,
     ["suite", "run"]),
]


def strip_times(node):
    if isinstance(node, dict):
        return {k: strip_times(v) for k, v in node.items()
                if k not in ("wall_time_ms", "runtime_ms")}
    if isinstance(node, list):
        return [strip_times(v) for v in node]
    return node


def render(args, fixtures):
    out = []
    for a in args:
        if a.startswith("{") and a.endswith(".json}"):
            out.append(str(fixtures / a[1:-1]))
        else:
            out.append(a)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--fixtures", required=True, type=Path)
    ap.add_argument("--golden", required=True, type=Path)
    ap.add_argument("--update", action="store_true",
                    help="rewrite golden files from current output")
    ap.add_argument("--only", help="run a single named case")
    opts = ap.parse_args()

    failures = []
    for name, want_code, args in CASES:
        if opts.only and name != opts.only:
            continue
        argv = [opts.cli] + render(args, opts.fixtures)
        proc = subprocess.run(argv, capture_output=True, text=True,
                              timeout=240)
        if proc.returncode != want_code:
            failures.append(f"{name}: exit {proc.returncode}, "
                            f"expected {want_code}\n{proc.stderr}")
            continue
        try:
            report = strip_times(json.loads(proc.stdout))
        except json.JSONDecodeError as e:
            failures.append(f"{name}: report is not JSON ({e})")
            continue
        golden_path = opts.golden / f"{name}.json"
        if opts.update:
            golden_path.write_text(
                json.dumps(report, indent=2, sort_keys=True) + "\n")
            print(f"updated {name}")
            continue
        want = json.loads(golden_path.read_text())
        if report != want:
            failures.append(f"{name}: report differs from golden")
            continue
        print(f"ok {name}")

    if failures:
        print("\n".join(failures), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
