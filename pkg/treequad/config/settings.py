#!/usr/bin/env python3
"""
Configuration settings for tree quadrature and the benchmark harness.
"""

import os

# Benchmark problems
COVARIANCE_SCALE = 1.0 / 200.0  # sigma^2 of every benchmark mode
SUPPORTED_PROBLEMS = ["gaussian", "camel", "quad"]

# Evaluation budget and TQ defaults
DEFAULT_BUDGET = 12_000
DEFAULT_REPLICATES = 20
DEFAULT_LEAF_EVALS = 10  # random container integral
DEFAULT_ACTIVE_FRACTION = 0.25
DEPTH_CAP = 200
VARIANCE_STOP_FACTOR = 1e-10  # y_variance threshold = factor * range(Y0)^2
MAX_SAMPLES_ONLY_MAX_DIM = 5  # above this dim the variance stop is added

# Split search
SSE_TIE_TOLERANCE = 1e-10  # relative to the parent SSE

# Samplers
MAX_CONSECUTIVE_REJECTIONS = 10**6
METROPOLIS_STEP = 0.05
METROPOLIS_BURN_IN = 500

# Vegas
VEGAS_BINS = 50
VEGAS_ITERATIONS = 10
VEGAS_ALPHA = 1.5
VARIANCE_FLOOR = 1e-300

# Diagnostics
DEFAULT_POSTERIOR_SAMPLES = 10_000
DEFAULT_SURROGATE_SAMPLES = 8_000
MEMBERSHIP_CHUNK = 512

# Output files
RUNS_FILE = "runs.csv"
CONFIG_FILE = "config.json"
SUMMARY_CSV = "summary.csv"
SUMMARY_TEXT = "summary.txt"
REMOVAL_CURVE_FILE = "removal_curve.csv"
CUMULATIVE_CURVE_FILE = "cumulative_curve.csv"
SURROGATE_FILE = "surrogate_samples.csv"

# Logging settings
LOG_LEVEL = os.getenv("TREEQUAD_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(name)s - %(message)s"

# Debug: re-check leaf tiling after every split
CHECK_TILING = os.getenv("TREEQUAD_CHECK_TILING", "0") not in ("", "0", "false", "False")
