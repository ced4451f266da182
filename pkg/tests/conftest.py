import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vanishing.corpus import builtin_corpus_entries  # noqa: E402
from vanishing.group import build_builtin, build_from_permutations, perm_from_cycles  # noqa: E402


@lru_cache(maxsize=None)
def corpus(max_order: int = 1024):
    return tuple((e, e.build()) for e in builtin_corpus_entries(max_order))


def by_name(name: str):
    for e, G in corpus():
        if e.name == name:
            return G
    raise KeyError(name)


@pytest.fixture(scope="session")
def S3():
    return build_from_permutations([perm_from_cycles([[0, 1]], 3), perm_from_cycles([[0, 1, 2]], 3)], 3, name="S3")


@pytest.fixture(scope="session")
def Q8():
    return build_builtin("quaternion", {"order": 8})


@pytest.fixture(scope="session")
def D8():
    return build_builtin("dihedral", {"order": 8})
