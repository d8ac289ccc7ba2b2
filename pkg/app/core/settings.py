"""
Runtime settings.

Defaults can be overridden through environment variables; values are read
once at import time.
"""

import os

# Seed used by suites and random samplers when none is given
DEFAULT_SEED = int(os.environ.get("WMN_SEED", "7"))

# Cover elements are compared by evaluation on monomials with ||deg g|| <= W
EVALUATION_WINDOW = int(os.environ.get("WMN_EVAL_WINDOW", "3"))

# Total degree bound for fit_jets
JET_DEGREE_BOUND = int(os.environ.get("WMN_JET_DEGREE", "3"))

# Default number of random samples per suite
DEFAULT_SAMPLES = int(os.environ.get("WMN_SAMPLES", "200"))
