"""
Defaults - shared constants for the engine and the CLI.

The default truncation can be overridden with the NECKLACE_TRUNCATION
environment variable ("N,M", either side may be "*"). Nothing else is read
from the environment.
"""

import logging
import os

from multimap import Truncation

log = logging.getLogger(__name__)

ENV_TRUNCATION = "NECKLACE_TRUNCATION"

SCHEMA_VERSION = 1

# Bounds used when neither a flag nor the environment says otherwise
DEFAULT_MAX_ARITY = 4
DEFAULT_MAX_OUTPUTS = 3
DEFAULT_SEED = 7

# Random elements
RANDOM_TERMS = 4
RANDOM_ATTEMPTS = 200
RANDOM_COEFFICIENTS = (-2, -1, 1, 2)


def default_truncation() -> Truncation:
    raw = os.environ.get(ENV_TRUNCATION)
    if not raw:
        return Truncation(DEFAULT_MAX_ARITY, DEFAULT_MAX_OUTPUTS)
    try:
        truncation = Truncation.parse(raw)
    except ValueError:
        log.warning("[config] ignoring %s=%r, expected 'N,M'", ENV_TRUNCATION, raw)
        return Truncation(DEFAULT_MAX_ARITY, DEFAULT_MAX_OUTPUTS)
    log.debug("[config] truncation %s from environment", truncation)
    return truncation
