import pytest
from hypothesis import given, strategies as st

from mimsolve.problems import (CATALOG_NAMES, NATURALS, PARAMETERIZED, POSITIVE, ConstraintMatrix,
                               SetSpec, SetSpecError, catalog_lookup, catalog_row, contains, d_value,
                               parse_matrix, parse_set_spec, truncated_member, write_matrix)

ALL_ROWS = [(name, p) for name in CATALOG_NAMES for p in ((1, 2, 3, 4) if name in PARAMETERIZED else (None,))]


def _problem(name, p):
    return catalog_lookup(name, p) if p else catalog_lookup(name)


def test_parse_examples():
    assert parse_set_spec("{0}") == SetSpec(False, (0,))
    assert parse_set_spec("N+") == SetSpec(True, (0,))
    assert parse_set_spec(">=3") == SetSpec(True, (0, 1, 2))
    assert parse_set_spec("N") == NATURALS
    assert parse_set_spec("co{2,0}") == SetSpec(True, (0, 2))


@pytest.mark.parametrize("bad", ["{}", "{1,}", "co{a}", "M", ">=x", "{1 2}", ""])
def test_parse_rejects(bad):
    with pytest.raises(SetSpecError):
        parse_set_spec(bad)


def test_contains_examples():
    assert contains(SetSpec.finite(0), 0)
    assert not contains(POSITIVE, 0)
    assert contains(SetSpec.cofinite_of(0, 2), 5)


def test_d_value_examples():
    assert d_value(NATURALS) == 0
    assert d_value(SetSpec.finite(2)) == 3
    assert d_value(POSITIVE) == 1


def test_truncated_member_examples():
    assert not truncated_member(SetSpec.finite(0, 1), 2, 2)
    assert truncated_member(POSITIVE, 1, 1)
    with pytest.raises(ValueError):
        truncated_member(SetSpec.finite(3), 0, 2)


@pytest.mark.parametrize("name, p", ALL_ROWS)
def test_truncation_agrees_with_exact_membership(name, p):
    prob = _problem(name, p)
    for mu in (prob.sigma, prob.rho):
        for d in (prob.d, prob.d + 2):
            for t in range(51):
                assert truncated_member(mu, min(t, d), d) == contains(mu, t)


@st.composite
def setspecs(draw):
    elems = draw(st.lists(st.integers(0, 8), unique=True))
    cofinite = draw(st.booleans()) or not elems
    return SetSpec(cofinite, tuple(sorted(elems)))


@given(setspecs(), st.integers(0, 60), st.integers(0, 3))
def test_truncation_property(mu, t, extra):
    d = d_value(mu) + extra
    assert truncated_member(mu, min(t, d), d) == contains(mu, t)


@given(setspecs())
def test_print_parse_round_trip(mu):
    assert parse_set_spec(str(mu)) == mu


@pytest.mark.parametrize("name, p", ALL_ROWS)
def test_problem_d_matches_listed_column(name, p):
    sigma, rho, _, listed = catalog_row(name, p) if p else catalog_row(name)
    assert max(d_value(sigma), d_value(rho)) == listed


def test_catalog_examples():
    ind = catalog_lookup("independent-set")
    assert (ind.sigma, ind.rho, ind.d) == (SetSpec.finite(0), NATURALS, 1)
    pc = catalog_lookup("perfect-code")
    assert (pc.sigma, pc.rho, pc.d) == (SetSpec.finite(0), SetSpec.finite(1), 2)
    dd = catalog_lookup("d-dominating-set", 3)
    assert (dd.sigma, dd.rho, dd.d) == (NATURALS, SetSpec.at_least(3), 3)
    assert dd.name == "d-dominating-set[3]"


def test_catalog_unknown_lists_names():
    with pytest.raises(KeyError, match="independent-set"):
        catalog_lookup("no-such-problem")


def test_objective_override():
    assert catalog_lookup("dominating-set", objective="max").objective == "max"
    with pytest.raises(ValueError):
        catalog_lookup("dominating-set", objective="most")


def test_matrix_parse_and_round_trip():
    mat = parse_matrix("lcvp 3 1\n{0} N N\nN {0} N\nN N {0}\n")
    assert mat == ConstraintMatrix.coloring(3, 1)
    assert parse_matrix(write_matrix(mat)) == mat
    single = parse_matrix("lcvp 1 2\n{0,1}\n")
    assert single.q == 1 and single.r == 2 and single.d == 2
    emb = ConstraintMatrix.from_sigma_rho(SetSpec.finite(0), POSITIVE)
    assert emb[0, 0] == SetSpec.finite(0) and emb[1, 0] == POSITIVE and emb[0, 1] == NATURALS


@pytest.mark.parametrize("text", ["lcvp 2 1\n{0} N\n", "lcvp 2 1\n{0} N\nN\n", "lcvp 1 0\nN\n",
                                  "lcvp 1 1\n{}\n", "lcv 1 1\nN\n", ""])
def test_matrix_rejects(text):
    with pytest.raises(ValueError):
        parse_matrix(text)
