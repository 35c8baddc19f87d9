from __future__ import annotations

import pytest

from bigqh.dubrovin import dubrovin_matrix
from bigqh.potential import build_potential, solve_wdvv
from bigqh.session import Session


@pytest.fixture(scope="session")
def table2():
    return solve_wdvv(2)


@pytest.fixture(scope="session")
def potential2(table2):
    return build_potential(table2)


@pytest.fixture(scope="session")
def family_matrices(potential2):
    """alpha=2 single-parameter families keyed by the symbolic index 2..5."""
    out = {}
    for idx in (2, 3, 4, 5):
        coords = {f"t{i}": (None if i == idx else 0) for i in (2, 3, 4, 5)}
        out[idx] = dubrovin_matrix(potential2, 2, **coords)
    return out


@pytest.fixture(scope="session")
def full_matrix(potential2):
    return dubrovin_matrix(potential2, 2)


@pytest.fixture(scope="session")
def session(table2, potential2):
    ses = Session()
    ses._tables[2] = table2
    ses._potentials[2] = potential2
    return ses
