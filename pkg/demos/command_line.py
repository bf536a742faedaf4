"""
Driving the pipeline from the command line
==========================================

Each subcommand is one stage; a runbook lists stages to run in order.
Output files land next to the runbook in demos/data.
"""

# %%
import json
import os
import subprocess
import sys

here = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def coxmod(*args):
    proc = subprocess.run([sys.executable, "-m", "coxmod", *args], cwd=here,
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


# %%
# one round of the automatic search is not enough: exit status 2
code, out, _ = coxmod("blowup-auto", "--input", "p345.json",
                      "--center", "center-p345-linear.json", "--max-k", "1")
print(code, json.loads(out)["status"])

# %%
# a malformed polynomial is reported with its position
print(coxmod("proj-model", "--input", "p345.json", "--poly", "T1 + * T2"))

# %%
code, out, _ = coxmod("runbook", "--runbook", "runbook.json")
print(code)
print(out)

# %%
with open(os.path.join(here, "report.json")) as fh:
    print(json.load(fh)["report"]["overall"])
