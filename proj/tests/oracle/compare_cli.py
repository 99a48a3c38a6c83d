#!/usr/bin/env python3
"""Compare the tool's JSON reports with loop_oracle.py on one model.

Usage:  compare_cli.py TOOL MODEL_FILE N_MAX
"""
import json
import os
import subprocess
import sys


def run_tool(tool, command, model, n_max):
    out = subprocess.run([tool, command, model, "--max-degree", str(n_max), "--format", "json"],
                         capture_output=True, text=True, check=False)
    report = json.loads(out.stdout)
    if report["exit_code"] != 0:
        raise SystemExit(f"{command} exited with {report['exit_code']}: {report.get('error')}")
    return report


def main():
    tool, model, n_max = sys.argv[1], sys.argv[2], int(sys.argv[3])
    here = os.path.dirname(os.path.abspath(__file__))
    oracle = json.loads(subprocess.run([sys.executable, os.path.join(here, "loop_oracle.py"), model, str(n_max)],
                                       capture_output=True, text=True, check=True).stdout)
    failures = []

    base = run_tool(tool, "validate", model, n_max)["tables"]["H(M)"]
    if base != oracle["base_betti"]:
        failures.append(f"base Betti {base} != {oracle['base_betti']}")

    hodge = run_tool(tool, "hodge", model, n_max)["tables"]
    if hodge["H(LM)"] != oracle["loop_betti"]:
        failures.append(f"loop Betti {hodge['H(LM)']} != {oracle['loop_betti']}")
    for n in range(n_max + 1):
        for k in range(n + 1):
            label = f"H_({k})"
            ours = hodge[label][n] if label in hodge else 0
            theirs = oracle["hodge"].get(f"{n},{k}", 0)
            if ours != theirs:
                failures.append(f"H^{n}_({k}) = {ours}, oracle {theirs}")

    aut = run_tool(tool, "aut-ranks", model, n_max)["tables"]
    der = oracle["derivation_homology_from_1"]
    for m, value in enumerate(aut["Der"]):
        if value is not None and m - 1 < len(der) and value != der[m - 1]:
            failures.append(f"Der_{m} = {value}, oracle {der[m - 1]}")

    for f in failures:
        print("MISMATCH", f)
    print(f"{os.path.basename(model)}: {'ok' if not failures else 'FAILED'}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
