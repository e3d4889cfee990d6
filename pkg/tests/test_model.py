import pytest
from hypothesis import given, strategies as st

from semchan import (
    ObjectRef,
    PredicateCode,
    Proposition,
    World,
    encode_frame,
    equivalent,
    holds,
    negate,
    parse_proposition,
    render_proposition,
)
from semchan.model import InconsistentWorldError, PropositionSyntaxError, load_world

from genprops import corpus

names = st.text(
    alphabet="ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-",
    min_size=1, max_size=12)
predicates = st.builds(PredicateCode, names)
numbers = st.integers(min_value=1, max_value=2**64 - 1)
ground_objects = st.one_of(
    st.builds(ObjectRef.num, numbers),
    st.just(ObjectRef.all_objects()),
)
ground_props = st.builds(Proposition, st.booleans(), predicates, ground_objects)


def test_parse_basic():
    p = parse_proposition("ON(112)")
    assert p == Proposition(True, PredicateCode("ON"), ObjectRef.num(112))


def test_parse_negated():
    assert parse_proposition("~ON(112)") == negate(parse_proposition("ON(112)"))


def test_parse_all_objects():
    p = parse_proposition("NT(*)")
    assert p.polarity and p.predicate == PredicateCode("NT")
    assert p.object.kind == "all"
    assert p.predicate.is_builtin


def test_parse_nested_hex_roundtrip():
    from semchan.wire import body_bytes

    inner = encode_frame(parse_proposition("ON(112)"))
    text = f"NT(<{body_bytes(inner).hex()}>)"
    p = parse_proposition(text)
    assert p.object.kind == "nested"
    assert p.object.frame == inner
    assert render_proposition(p) == text


def test_parse_rejects_literal_zero():
    with pytest.raises(PropositionSyntaxError):
        parse_proposition("P(0)")


@pytest.mark.parametrize("bad", ["", "P", "P(", "P()", "(3)", "P(x)", "P(3) junk"])
def test_parse_syntax_errors(bad):
    with pytest.raises(PropositionSyntaxError):
        parse_proposition(bad)


@given(ground_props)
def test_render_parse_fixed_point(p):
    assert parse_proposition(render_proposition(p)) == p


def test_render_parse_fixed_point_nested():
    for p in corpus(seed=11, count=200):
        assert parse_proposition(render_proposition(p)) == p


@given(ground_props)
def test_negate_involution(p):
    assert negate(negate(p)) == p


@given(ground_props, ground_props, ground_props)
def test_equivalent_is_equivalence_relation(p, q, r):
    assert equivalent(p, p)
    assert equivalent(p, q) == equivalent(q, p)
    if equivalent(p, q) and equivalent(q, r):
        assert equivalent(p, r)


def test_equivalent_distinguishes_nested_frames():
    f1 = encode_frame(parse_proposition("ON(112)"))
    f2 = encode_frame(parse_proposition("ON(113)"))
    p = Proposition(True, PredicateCode("NT"), ObjectRef.nested(f1))
    q = Proposition(True, PredicateCode("NT"), ObjectRef.nested(f2))
    assert not equivalent(p, q)


def test_predicate_validation():
    with pytest.raises(ValueError):
        PredicateCode("")
    with pytest.raises(ValueError):
        PredicateCode("a" * 65)
    with pytest.raises(ValueError):
        PredicateCode("has space")
    with pytest.raises(ValueError):
        PredicateCode(0)
    assert not PredicateCode("nt").is_builtin  # case-sensitive
    assert PredicateCode("Err").is_builtin


def test_object_validation():
    with pytest.raises(ValueError):
        ObjectRef.num(0)
    with pytest.raises(ValueError):
        ObjectRef.num(2**64)


def test_nesting_depth_cap():
    f = encode_frame(parse_proposition("P(1)"))
    for _ in range(7):
        f = encode_frame(Proposition(True, PredicateCode("Q"), ObjectRef.nested(f)))
    with pytest.raises(ValueError):
        ObjectRef.nested(
            encode_frame(Proposition(True, PredicateCode("Q"), ObjectRef.nested(f))))


P = PredicateCode("P")
ON = PredicateCode("ON")


def test_holds_direct_membership():
    w = World.build({112}, {(ON, 112, True)})
    assert holds(w, parse_proposition("ON(112)"))
    assert not holds(w, parse_proposition("~ON(112)"))
    assert not holds(w, parse_proposition("ON(7)"))


def test_holds_all_objects_conjunction():
    w = World.build({1, 2}, {(P, 1, True), (P, 2, True)})
    assert holds(w, parse_proposition("P(*)"))
    w2 = World.build({1, 2}, {(P, 1, True)})
    assert not holds(w2, parse_proposition("P(*)"))


def test_holds_all_negative_polarity():
    w = World.build({1, 2}, {(P, 1, False), (P, 2, False)})
    assert holds(w, parse_proposition("~P(*)"))
    assert not holds(w, parse_proposition("P(*)"))


def test_holds_all_equals_conjunction_brute_force():
    # every subset assignment over domains of size <= 6
    for size in range(1, 7):
        domain = set(range(1, size + 1))
        for mask in range(3 ** min(size, 4)):
            lits = set()
            m = mask
            for obj in sorted(domain)[:4]:
                state = m % 3
                m //= 3
                if state == 1:
                    lits.add((P, obj, True))
                elif state == 2:
                    lits.add((P, obj, False))
            w = World.build(domain, lits)
            for pol in (True, False):
                expected = all(
                    holds(w, Proposition(pol, P, ObjectRef.num(obj)))
                    for obj in domain)
                got = holds(w, Proposition(pol, P, ObjectRef.all_objects()))
                assert got == expected


def test_holds_rejects_builtin_and_nested():
    w = World.build({1}, set())
    with pytest.raises(ValueError):
        holds(w, parse_proposition("NT(1)"))
    nested = Proposition(
        True, P, ObjectRef.nested(encode_frame(parse_proposition("P(1)"))))
    with pytest.raises(ValueError):
        holds(w, nested)


def test_world_rejects_inconsistency():
    with pytest.raises(InconsistentWorldError):
        World.build({1}, {(P, 1, True), (P, 1, False)})


def test_world_rejects_foreign_object():
    with pytest.raises(ValueError):
        World.build({1}, {(P, 2, True)})


def test_load_world(tmp_path):
    path = tmp_path / "w.world"
    path.write_text(
        "# comment\n"
        "domain: 1 14 112\n"
        "ON(112)\n"
        "~AC-Fail(14)  # inline comment\n"
    )
    w = load_world(str(path))
    assert w.domain == {1, 14, 112}
    assert holds(w, parse_proposition("ON(112)"))
    assert holds(w, parse_proposition("~AC-Fail(14)"))


def test_load_world_requires_header(tmp_path):
    path = tmp_path / "w.world"
    path.write_text("ON(112)\n")
    with pytest.raises(ValueError):
        load_world(str(path))
