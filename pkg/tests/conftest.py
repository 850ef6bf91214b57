# Shared pytest configuration and fixtures.

import json
import sys
from pathlib import Path

import pytest

# Add the repository root to path for `src.thetaglue` imports
repo_root = Path(__file__).parent.parent
sys.path.insert(0, str(repo_root))

from src.thetaglue.core.enumeration import ball_count, component_series  # noqa: E402
from src.thetaglue.core.modforms import get_cache  # noqa: E402


@pytest.fixture(autouse=True)
def fresh_caches():
    """Every test starts from empty series and enumeration caches."""
    for cached in (get_cache, component_series, ball_count):
        cached.cache_clear()
    yield
    for cached in (get_cache, component_series, ball_count):
        cached.cache_clear()


@pytest.fixture
def write_spec(tmp_path):
    """Write a lattice spec JSON file and return its path."""
    def _write(family, m, epsilon=0, name="spec.json", **extra):
        data = {"family": family, "m": m, "epsilon": epsilon, **extra}
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path
    return _write
