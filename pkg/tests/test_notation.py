from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from einsolv import catalog
from einsolv.liealg import JacobiError
from einsolv.notation import NotationError, format_algebra, format_form, parse_algebra, parse_form


def test_heisenberg_sign_convention():
    g = parse_algebra("0,0,e^{12}")
    assert g.bracket((1, 0, 0), (0, 1, 0)) == (0, 0, -1)


def test_extension_notation():
    g = parse_algebra("2/3e^{14},2/3e^{24},4/3e^{34}+e^{12},0")
    assert g.dim == 4
    assert g.c[0][3] == (F(-2, 3), 0, 0, 0)
    assert g.c[2][3][2] == F(-4, 3)
    assert g.c[0][1][2] == -1


def test_jacobi_failure_is_reported():
    with pytest.raises(JacobiError) as err:
        parse_algebra("0,0,e^{12},e^{13},e^{24}")
    assert "(e1, e2, e3)" in str(err.value)


@pytest.mark.parametrize("text", ["0,0,e^{1}", "0,0,e^{34}", "0,0,e^{12", "0,x", "0,0,e^{19}"])
def test_syntax_and_range_errors(text):
    with pytest.raises(NotationError):
        parse_algebra(text)


def test_braced_indices_for_large_dimension():
    text = ",".join(["0"] * 10 + ["e^{1,10}"])
    g = parse_algebra(text)
    assert g.dim == 11 and g.c[0][9][10] == -1
    assert parse_algebra(format_algebra(g)) == g


@pytest.mark.parametrize("entry", catalog.all_entries(), ids=lambda e: e.name)
def test_round_trip_catalog(entry):
    g = entry.algebra()
    assert parse_algebra(format_algebra(g)) == g


@given(st.dictionaries(st.sampled_from([(0, 1), (0, 3), (1, 2), (2, 3), (0, 2)]),
                       st.builds(F, st.integers(-5, 5).filter(bool), st.integers(1, 3)), max_size=5))
def test_form_round_trip(terms):
    assert parse_form(format_form(terms, 4), 4) == terms
