"""Tunable limits.

STEP_BUDGET bounds the number of reduction steps a single top-level computation
may spend before raising ResourceLimitError.  DEGREE_BOUND is the default cap
for bounded generator and expression searches.  The CLI overrides both from
flags or the environment (SEMISMOOTH_STEP_BUDGET).
"""

from __future__ import annotations

STEP_BUDGET = 1_000_000
DEGREE_BOUND = 4
