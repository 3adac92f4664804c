"""Resource caps for the exact decision procedures.

Every cap guards an exponential sweep; exceeding one raises an explicit
error instead of falling back to an approximation.  Defaults can be
overridden through the UGKIT_CAPS environment variable, e.g.

    UGKIT_CAPS="lattice_ranges=24,approx_subsets=18"
"""

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    lattice_ranges: int = 20      # distinct range sets swept in lattice membership
    approx_subsets: int = 16      # |F| bound for the 2^|F| approximation sweep
    closure_vertices: int = 12    # universe size bound for the brute-force closure
    normalize_rounds: int = 10000  # safety bound on rewrite iterations


def from_env(base=None):
    caps = base or Caps()
    raw = os.environ.get("UGKIT_CAPS", "")
    if not raw:
        return caps
    overrides = {}
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        key, _, value = item.partition("=")
        key = key.strip()
        if key in Caps.__dataclass_fields__:
            overrides[key] = int(value)
    return replace(caps, **overrides)


DEFAULT = from_env()
