from fractions import Fraction as F

import pytest

from einsolv import catalog
from einsolv.curvature import MetricLieAlgebra, is_einstein
from einsolv.liealg import flags
from einsolv.notation import parse_algebra


def test_counts():
    assert len(catalog.NICE_LOW_DIM) == 16
    assert len(catalog.TRACELESS_7D) == 11
    assert len({e.name for e in catalog.all_entries()}) == len(catalog.all_entries())


def test_lookup():
    assert catalog.lookup("31:1") == parse_algebra("0,0,e^{12}")
    with pytest.raises(KeyError):
        catalog.lookup("no-such-algebra")
    # generic rank-one extension keys
    assert catalog.lookup("41:1+N").dim == 5


@pytest.mark.parametrize("key", sorted(catalog.SYMPLECTIC_EXTENSIONS))
def test_extension_notation_matches_nikolayevsky_extension(key):
    assert parse_algebra(catalog.SYMPLECTIC_EXTENSIONS[key][0]) == catalog.lookup(key + "+N")


@pytest.mark.parametrize("entry", catalog.NICE_LOW_DIM + catalog.TRACELESS_7D, ids=lambda e: e.name)
def test_catalog_algebras_are_nilpotent(entry):
    assert flags(entry.algebra()).nilpotent


def test_parametric_instances_match_catalog():
    by_name = {e.name: e for e in catalog.TRACELESS_7D}
    assert parse_algebra(catalog.parametric_12457N(1)) == by_name["12457N"].algebra()
    assert parse_algebra(catalog.parametric_12457N_2(0)) == by_name["12457N_2"].algebra()


def test_published_metrics_are_einstein():
    assert is_einstein(MetricLieAlgebra.diagonal(catalog.lookup("31:1+N"),
                                                 catalog.heisenberg_structures(2, 3, 1)[0])) == F(-1, 2)
    assert is_einstein(MetricLieAlgebra.diagonal(catalog.lookup("51:2+N"),
                                                 catalog.h5_structures(2, 3, 5, -1)[0])) == F(-1, 2)
    for g1 in (1, 2):
        _, ext, _, _ = catalog.twisted_521_2(g1)
        assert is_einstein(MetricLieAlgebra(catalog.lookup("521:2+N"), ext)) == F(-1, 2)


def test_double_421_derivation_readings():
    # the structure-equation reading is traceless-compatible with the printed 20/3 metric entries
    D = catalog.DOUBLE_421_D
    N = (F(1, 3), F(2, 3), F(1), F(4, 3))
    assert sum(d * n for d, n in zip(D, N)) == 0
    assert 2 * sum(d * d for d in D) == F(20, 3)
    assert 2 * sum(d * d for d in catalog.DOUBLE_421_D_PRINTED) != F(20, 3)
