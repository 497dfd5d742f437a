"""
This example runs a seeded survey of the n^(r-1) corollary in the plane and in
space and prints how close the random instances come to the constant.

Usage: python corollary_survey.py [<trials>] [<seed>]
"""

import sys

import mixvol
from mixvol.harness import (
    dump_summary,
    tightness_survey,
)

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 50
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0

mixvol.set_stream_logger("mixvol.harness", level="INFO")

summary = tightness_survey("corollary", trials, [2, 3], seed, workers=2)
print(dump_summary(summary))
if summary["violations"]:
    sys.exit(1)
