import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontosem.errors import ParseError, ScopeError
from ontosem.logform import (
    TRUE,
    Is,
    Kind,
    LogicalForm,
    Noo,
    Pred,
    Quantifier,
    Status,
    Var,
    alpha_equal,
    check_scope,
    conj,
    fold_names,
    simplify_is,
)
from ontosem.ontology import TypeTerm
from ontosem.text import parse_lf, serialize
from ontosem.unify import unify_all

from oracles import random_form

E, E1, A = Kind.EXISTS, Kind.EXISTS_UNIQUE, Kind.FORALL
ENTITY, HUMAN = TypeTerm("entity"), TypeTerm("human")


def form(text):
    return parse_lf(text, relations=("ContentOf", "MadeOf", "PaintingOf"))


def test_conj_flattens_and_drops_true():
    x = Var(0, "x")
    p, q = Pred("P", (x,)), Pred("Q", (x,))
    assert conj() == TRUE
    assert conj(p) == p
    assert conj(p, TRUE, conj(q, p)).items == (p, q, p)


def test_identity_names_merge():
    x, y = Var(0, "x"), Var(1, "y")
    lf = LogicalForm((Quantifier(E1, x, (ENTITY,)), Quantifier(E1, y, (ENTITY,))),
                     conj(Noo(x, "whb"), Noo(y, "btk"), Is(x, y)))
    out = simplify_is(lf)
    assert len(out.prefix) == 1
    assert out.atoms() == [Noo(x, "whb"), Noo(x, "btk")]


def test_self_identity_reduces_to_existence():
    lf = form('(E! x:entity)(Noo(x,"whb") & Is(x,x))')
    assert serialize(simplify_is(lf)) == '(E! x:entity)(Noo(x,"whb"))'


def test_predication_merge_then_unify(onto):
    lf = form("(E! whb:entity)(E x:human)(Thief(x) & Is(whb,x))")
    merged = simplify_is(lf)
    assert merged.prefix[0].kind is E1
    assert set(merged.prefix[0].types) == {ENTITY, HUMAN}
    assert serialize(merged) == "(E! whb:entity•human)(Thief(whb))"
    final, _ = unify_all(onto, lf)
    assert serialize(final) == "(E! whb:human)(Thief(whb))"


def test_is_across_universal_and_existential_is_rejected():
    lf = form("(A x:human)(E y:human)(Is(x,y))")
    with pytest.raises(ScopeError):
        simplify_is(lf)


def test_check_scope():
    x, y = Var(0, "x"), Var(1, "y")
    with pytest.raises(ScopeError):
        check_scope(LogicalForm((Quantifier(E, x, ()),), Pred("P", (y,))))
    with pytest.raises(ScopeError):
        check_scope(LogicalForm((Quantifier(E, x, ()), Quantifier(E, x, ())), TRUE))


def test_serialize_examples():
    lf = form("(E! sheba:human)(Artist(sheba) & Young(sheba))")
    assert serialize(lf) == "(E! sheba:human)(Artist(sheba) & Young(sheba))"
    assert serialize(form("(E! x:entity)(true)")) == "(E! x:entity)(true)"
    assert serialize(form("(Ea e:elephant)(Large(e))")) == "(Ea e:elephant)(Large(e))"


def test_parse_examples():
    lf = form('(E! x:entity)(Noo(x,"sheba"))')
    assert len(lf.prefix) == 1 and lf.atoms() == [Noo(lf.vars[0], "sheba")]
    lf = form("(E! j:human)(E b:book)(E c:content)(Read(j,c) & ContentOf(c,b) & Burn(j,b))")
    assert len(lf.prefix) == 3 and len(lf.atoms()) == 3
    assert lf.status is Status.FINAL


def test_parse_error_at_empty_type():
    with pytest.raises(ParseError) as info:
        parse_lf("(E! x:)")
    assert info.value.pos == 6


@pytest.mark.parametrize("text,status", [
    ("(E x:⊥)(Artificial(x))", Status.ANOMALOUS),
    ("(E x:animal)(Hungry(x:animal))", Status.PRE),
    ("(E! x:entity•human)(Thief(x))", Status.PRE),
    ("(E x:animal)(Hungry(x))", Status.FINAL),
])
def test_status_inference(text, status):
    assert parse_lf(text).status is status


def test_alpha_equal_ignores_names_and_order():
    a = form("(E! j:human)(E e:trip)(Planned(j,e) & Lengthy(e))")
    b = form("(E! x:human)(E y:trip)(Lengthy(y) & Planned(x,y))")
    c = form("(E! x:human)(E y:trip)(Lengthy(x) & Planned(x,y))")
    assert alpha_equal(a, b)
    assert not alpha_equal(a, b, ordered=True)
    assert not alpha_equal(a, c)


def test_fold_names_is_display_only():
    lf = form('(E! x:human)(Noo(x,"sheba") & Hungry(x))')
    assert serialize(fold_names(lf)) == "(E! sheba:human)(Hungry(sheba))"


def test_serialize_avoids_constant_clash():
    lf = form("(E now:event)(E t)(t < t_u & At(now,now))")
    text = serialize(lf)
    assert alpha_equal(parse_lf(text), lf)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=300, deadline=None)
def test_round_trip(seed):
    lf = random_form(random.Random(seed))
    back = parse_lf(serialize(lf), relations=("ContentOf", "MadeOf"), status=lf.status)
    assert back == lf or alpha_equal(back, lf, ordered=True)
    assert serialize(back) == serialize(lf)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=200, deadline=None)
def test_simplify_is_idempotent(seed):
    lf = random_form(random.Random(seed))
    try:
        once = simplify_is(lf)
    except ScopeError:
        return
    assert simplify_is(once) == once
    assert not any(isinstance(f, Is) for f in once.atoms())
    check_scope(once)
