"""Shared test configuration.

Runtime tables for N around 10 take tens of seconds to enumerate, so the
suite persists them under a repo-local cache directory; regeneration is
deterministic and a cold cache only makes the first run slower.
"""

import os
from pathlib import Path

CACHE_DIR = Path(__file__).resolve().parent.parent / ".cache"
CACHE_DIR.mkdir(exist_ok=True)
os.environ.setdefault("SCSORT_CACHE_DIR", str(CACHE_DIR))
