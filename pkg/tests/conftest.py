import pathlib

import pytest

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def cache_dir():
    """Repo-local oracle cache so first runs compute once and re-runs are fast."""
    path = REPO_ROOT / ".oracle_cache"
    path.mkdir(exist_ok=True)
    return path
