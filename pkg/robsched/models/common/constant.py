"""
Global constants.
"""

import os

# machine environments
IDENTICAL = 'identical'
UNIFORM = 'uniform'
UNRELATED = 'unrelated'
MACHINE_KINDS = (IDENTICAL, UNIFORM, UNRELATED)

# budgets for the exact oracles; callers may pass their own limits
DEFAULT_SCENARIO_LIMIT = int(os.getenv('ROBUST_SCHED_SCENARIO_LIMIT', 20))
DEFAULT_BRUTEFORCE_LIMIT = int(os.getenv('ROBUST_SCHED_BRUTEFORCE_LIMIT', 10 ** 6))
DEFAULT_BNB_JOB_LIMIT = int(os.getenv('ROBUST_SCHED_BNB_JOB_LIMIT', 24))
DEFAULT_SAT_LIMIT = int(os.getenv('ROBUST_SCHED_SAT_LIMIT', 20))

# suite runner parallelism
DEFAULT_THREADS = max(1, int(os.getenv('ROBUST_SCHED_THREADS', 1)))
