import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sandwich_forge.caps import CapExceeded
from sandwich_forge.eqdsl import (
    DSLSyntaxError,
    Equation,
    EquationalSpec,
    Implication,
    Mul,
    Var,
    check,
    find_model,
    format_spec,
    holds,
    parse,
    sandwich_laws,
    search_models,
    variables,
)
from sandwich_forge.magma import Magma, axiom_profile, is_isomorphic, right_zero
from sandwich_forge.search import enumerate_sandwiches

from conftest import all_tables, laws_by_loops

LAWS = sandwich_laws()
FOUR = LAWS.select(["LD", "II", "LI", "LS"])


def test_parse_ld():
    spec = parse("LD: (a*b)*(a*c) = a*(b*c)")
    law = spec["LD"]
    a, b, c = Var("a"), Var("b"), Var("c")
    assert law == Equation(Mul(Mul(a, b), Mul(a, c)), Mul(a, Mul(b, c)))
    assert variables(law) == ["a", "b", "c"]


def test_parse_ls_implication():
    law = parse("LS: a*b = b => b*a = a")["LS"]
    assert isinstance(law, Implication)


def test_left_associative():
    assert parse("X: a*b*c = a")["X"].lhs == Mul(Mul(Var("a"), Var("b")), Var("c"))


def test_syntax_error_position():
    with pytest.raises(DSLSyntaxError) as e:
        parse("X: a*(b = c")
    assert (e.value.line, e.value.column) == (1, 9)  # the "=" inside the parentheses
    assert "')'" in str(e.value)


@pytest.mark.parametrize("bad", ["X: ab = a", "X: a*b", ": a = a", "X: a = a = a", "X: a % b = a", "# nothing"])
def test_syntax_errors(bad):
    with pytest.raises(DSLSyntaxError):
        parse(bad)


def test_duplicate_names():
    with pytest.raises(DSLSyntaxError, match="duplicate"):
        parse("A: a = a\nA: a*a = a\n")


def test_comments_and_whitespace():
    spec = parse("# header\n\n  II :a * a=a   # idempotent\n")
    assert spec.names == ["II"]


def test_bundled_laws():
    assert LAWS.names == ["LD", "II", "LI", "LS", "LC"]


def test_check_right_zero():
    assert all(v is None for v in check(FOUR, right_zero(3)).values())


def test_check_not_ii(bundled):
    assert check(LAWS.select(["II"]), bundled["ii"])["II"] == {"a": 0}


def test_check_not_ld(bundled):
    assert check(LAWS.select(["LD"]), bundled["ld"])["LD"] is not None


def _terms(depth):
    leaf = st.sampled_from("abcd").map(Var)
    return st.recursive(leaf, lambda sub: st.builds(Mul, sub, sub), max_leaves=depth)


def _laws():
    eq = st.builds(Equation, _terms(6), _terms(6))
    return st.one_of(eq, st.builds(Implication, eq, eq))


@settings(max_examples=150, deadline=None)
@given(st.lists(_laws(), min_size=1, max_size=4))
def test_round_trip(laws):
    spec = EquationalSpec(tuple((f"L{i}", law) for i, law in enumerate(laws)))
    assert parse(format_spec(spec)) == spec


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_check_agrees_with_loops(t):
    got = holds(LAWS, Magma(t))
    ref = laws_by_loops(t)
    assert got == {k: ref[k.lower()] for k in LAWS.names}


@pytest.mark.parametrize("n", range(1, 6))
def test_check_agrees_on_enumerated(n):
    for m in enumerate_sandwiches(n).representatives:
        assert all(holds(LAWS, m).values())


def test_find_not_ii_model(bundled):
    m = find_model(LAWS.select(["LD", "LI", "LS"]), LAWS.select(["II"]), 2)
    assert is_isomorphic(m, bundled["ii"])


def test_find_right_zero_law():
    assert find_model(parse("R0: x*y = y"), None, 3) == right_zero(3)


def test_find_contradiction_exhausts():
    assert find_model(LAWS.select(["II"]), LAWS.select(["II"]), 2) is None


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("drop", ["LD", "II", "LI", "LS"])
def test_models_match_brute_force(n, drop):
    req = [k for k in ("LD", "II", "LI", "LS") if k != drop]
    models, _ = search_models(LAWS.select(req), LAWS.select([drop]), n, limit=0)
    brute = [
        t for t in all_tables(n)
        if all(laws_by_loops(t)[k.lower()] for k in req) and not laws_by_loops(t)[drop.lower()]
    ]
    assert sorted(m.tolist() for m in models) == sorted(brute)


def test_models_match_brute_force_order_three():
    req = ["II", "LI", "LS"]
    models, _ = search_models(LAWS.select(req), LAWS.select(["LD"]), 3, limit=0)
    assert models == []
    assert not any(
        all(laws_by_loops(t)[k.lower()] for k in req) and not laws_by_loops(t)["ld"]
        for t in all_tables(3)
    )


def test_models_repass_check():
    models, _ = search_models(LAWS.select(["LD", "II", "LI"]), LAWS.select(["LS"]), 3, limit=0)
    assert models
    for m in models:
        h = holds(LAWS, m)
        assert h["LD"] and h["II"] and h["LI"] and not h["LS"]
        assert not axiom_profile(m).ls


def test_model_cap():
    with pytest.raises(CapExceeded):
        find_model(LAWS.select(["II"]), None, 20)
