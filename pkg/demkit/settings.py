"""
demkit settings.

Configuration for the crystal toolkit: element budgets, sweep parallelism,
logging. Values come from the environment (optionally a `.env` file next to
manage.py) so the CLI and the test suite share one source of truth.

Environment variables:
- DEMKIT_BUDGET      maximum number of elements a tensor product may have
- DEMKIT_JOBS        worker processes used by `sweep`
- DEMKIT_LOG_LEVEL   root log level for the `demkit` loggers
- DEMKIT_OUTPUT_DIR  where exported files go when --out is a bare name
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')


# ============================================================================
# COMPUTATION LIMITS
# ============================================================================
# Tensor powers grow geometrically; anything above the budget is refused
# before a single element is built.
# ============================================================================

ELEMENT_BUDGET = int(os.getenv('DEMKIT_BUDGET', '1000000'))

SWEEP_JOBS = int(os.getenv('DEMKIT_JOBS', '1'))

# Rank above which `sweep` needs an explicit --budget
SWEEP_MAX_RANK = 3


# ============================================================================
# OUTPUT
# ============================================================================

DEFAULT_OUTPUT_DIR = Path(os.getenv('DEMKIT_OUTPUT_DIR', '.'))

# Canonical JSON: keys sorted, no whitespace
JSON_SEPARATORS = (',', ':')


# ============================================================================
# LOGGING
# ============================================================================

LOG_LEVEL = os.getenv('DEMKIT_LOG_LEVEL', 'WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
            'stream': 'ext://sys.stderr',
        },
    },
    'loggers': {
        name: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for name in ('demkit', 'lie', 'crystals', 'demazure', 'analysis')
    },
}
