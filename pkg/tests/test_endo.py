import pytest
from hypothesis import given, settings, strategies as st

from zmfn import intmat
from zmfn.endo import (
    RelationError,
    TypeI,
    TypeII,
    UnsupportedRank,
    abelianization_matrix,
    apply_endo,
    classify,
    compose,
    describe,
    dumps,
    from_dict,
    generator_images,
    generators,
    identity,
    inverse,
    loads,
    recognize,
    to_dict,
    type_ii,
)
from zmfn.whitehead import compose_images, compose_trace, enumerate_whitehead_auts
from zmfn.words import Element, Word, abelianize, parse_element


def W(*letters, n=2):
    return Word(letters, n)


def E(text, m=1, n=2):
    return parse_element(text, m, n)


def word_of(n, max_size):
    return st.lists(st.sampled_from([s * i for i in range(1, n + 1) for s in (1, -1)]),
                    max_size=max_size).map(lambda xs: Word(xs, n))


small = st.integers(-3, 3)


def matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def type_one(draw, m=None, n=2):
    m = draw(st.integers(1, 2)) if m is None else m
    phi = tuple(draw(word_of(n, 3)) for _ in range(n))
    return TypeI(phi, draw(matrix(m, m)), draw(matrix(n, m)))


@st.composite
def type_two(draw, m=None, n=2):
    m = draw(st.integers(1, 2)) if m is None else m
    w = draw(word_of(n, 3).filter(bool))
    l = draw(st.lists(small, min_size=m, max_size=m).filter(any))
    h = draw(st.lists(small, min_size=n, max_size=n))
    return type_ii(w, l, h, draw(matrix(m, m)), draw(matrix(n, m)))


@st.composite
def endo_and_element(draw):
    m = draw(st.integers(1, 2))
    psi = draw(st.one_of(type_one(m), type_two(m)))
    g = Element(tuple(draw(st.lists(small, min_size=m, max_size=m))), draw(word_of(2, 6)))
    return psi, g


def test_recognize_examples():
    psi = recognize([E("(2; 1)"), E("(0; x2)"), E("(1; x1 x2)")], 1, 2)
    assert psi == TypeI((W(2), W(1, 2)), [[2]], [[0], [1]])
    psi = recognize([E("(1; x1)"), E("(0; x1^2)"), E("(0; X1)")], 1, 2)
    assert psi == TypeII(W(1), (1,), (2, -1), [[1]], [[0], [0]])
    with pytest.raises(RelationError):
        recognize([E("(0; x1)"), E("(0; x2)"), E("(0; 1)")], 1, 2)


def test_recognize_wrong_count():
    with pytest.raises(ValueError):
        recognize([E("(0; 1)")], 1, 2)


def test_type_ii_validation_and_normal_form():
    with pytest.raises(ValueError):
        TypeII(W(1, 1), (1,), (0, 0), [[1]], [[0], [0]])
    with pytest.raises(ValueError):
        TypeII(W(1), (0,), (0, 0), [[1]], [[0], [0]])
    psi = type_ii(W(-1, -1), [1], [0, 1], [[0]], [[0], [0]])
    assert psi.w == W(1) and psi.l == (-2,) and psi.h == (0, -2)


def test_apply_examples():
    g = E("(3; x1 X2)")
    assert apply_endo(identity(1, 2), g) == g
    psi = TypeII(W(1), (2,), (1, 0), [[3]], [[0], [0]])
    assert apply_endo(psi, E("(1; x2)")) == E("(3; x1^2)")
    psi = TypeI((W(2), W(1)), [[1]], [[1], [0]])
    assert apply_endo(psi, E("(0; x1)")) == E("(1; x2)")
    with pytest.raises(ValueError):
        apply_endo(psi, E("(0, 0; x1)", 2))


@given(endo_and_element())
def test_apply_is_a_homomorphism(data):
    psi, g = data
    h = Element(tuple(reversed(g.abelian)), g.free.inverse() * Word((2,), 2))
    assert apply_endo(psi, g * h) == apply_endo(psi, g) * apply_endo(psi, h)


@given(st.one_of(type_one(), type_two()))
def test_recognize_round_trip(psi):
    assert recognize(generator_images(psi), psi.m, psi.n) == psi


def test_type_ii_with_trivial_images_is_not_constructible():
    # l != 0 and w != 1 mean some t_i image has nontrivial free part
    psi = type_ii(W(1), [1], [0, 0], [[0]], [[0], [0]])
    assert generator_images(psi)[0].free == W(1)


def test_compose_examples():
    psi = TypeI((W(1, 2), W(-1)), [[2]], [[1], [-1]])
    assert compose(identity(1, 2), psi) == psi
    assert compose(psi, identity(1, 2)) == psi
    t2 = TypeII(W(1, 2), (1,), (0, 1), [[1]], [[0], [1]])
    kill = TypeI((W(), W()), [[1]], [[0], [0]])
    out = compose(t2, kill)
    assert isinstance(out, TypeI) and out.phi == (W(), W())


@settings(max_examples=150)
@given(type_one(1), type_one(1))
def test_compose_type_one_closed_form(p1, p2):
    c = compose(p1, p2)
    M1 = abelianization_matrix(p1.phi)
    assert c.Q == intmat.matmul(p1.Q, p2.Q)
    assert c.P == intmat.add(intmat.matmul(p1.P, p2.Q, 1), intmat.matmul(M1, p2.P, 1))
    assert c.phi == compose_images(p1.phi, p2.phi)
    assert intmat.det(c.Q) == intmat.det(p1.Q) * intmat.det(p2.Q)


@given(endo_and_element(), st.data())
def test_compose_acts_right(data, draw):
    p1, g = data
    p2 = draw.draw(st.one_of(type_one(g.m), type_two(g.m)))
    assert apply_endo(compose(p1, p2), g) == apply_endo(p2, apply_endo(p1, g))


def test_abelianization_matrix_examples():
    assert abelianization_matrix((W(1, 2), W(2))) == ((1, 1), (0, 1))
    assert abelianization_matrix((W(), W())) == ((0, 0), (0, 0))
    assert abelianization_matrix((W(1), W(2))) == ((1, 0), (0, 1))


@given(word_of(2, 3), word_of(2, 3), word_of(2, 8))
def test_abelianization_matrix_consistent(a, b, u):
    from zmfn.whitehead import apply_images

    M = abelianization_matrix((a, b))
    assert abelianize(apply_images((a, b), u)) == intmat.vecmat(abelianize(u), M, 2)


def test_classify_examples():
    c = classify(identity(1, 2))
    assert c.is_mono and c.is_epi and c.is_auto and c.kind == "I"
    c = classify(TypeI((W(1, 1), W(2)), [[2]], [[0], [0]]))
    assert c.is_mono and not c.is_epi and not c.is_auto
    c = classify(TypeII(W(1), (1,), (0, 0), [[1]], [[0], [0]]))
    assert not c.is_mono and not c.is_epi and c.kind == "II"
    with pytest.raises(UnsupportedRank):
        classify(identity(1, 1))


@given(type_two())
def test_type_two_never_mono_or_epi(psi):
    c = classify(psi)
    assert not c.is_mono and not c.is_epi


@st.composite
def automorphisms(draw):
    m = draw(st.integers(1, 2))
    auts = enumerate_whitehead_auts(2)
    phi = compose_trace([auts[i] for i in draw(st.lists(st.integers(0, 19), max_size=4))], 2)
    Q = intmat.identity(m)
    for _ in range(draw(st.integers(0, 4))):
        i, j = draw(st.integers(0, m - 1)), draw(st.integers(0, m - 1))
        rows = [list(r) for r in Q]
        if i == j:
            rows[i] = [-x for x in rows[i]]
        else:
            s = draw(st.sampled_from([1, -1]))
            rows[i] = [x + s * y for x, y in zip(rows[i], rows[j])]
        Q = intmat.as_matrix(rows)
    return TypeI(phi, Q, draw(matrix(2, m)))


@given(automorphisms())
def test_inverse_of_automorphism(psi):
    assert classify(psi).is_auto
    inv = inverse(psi)
    ident = identity(psi.m, psi.n)
    assert compose(psi, inv) == ident
    assert compose(inv, psi) == ident


def test_inverse_rejects_type_two():
    with pytest.raises(ValueError):
        inverse(TypeII(W(1), (1,), (0, 0), [[1]], [[0], [0]]))


@given(st.one_of(type_one(), type_two()))
def test_serialization_round_trip(psi):
    assert loads(dumps(psi)) == psi
    assert dumps(loads(dumps(psi))) == dumps(psi)
    assert from_dict(to_dict(psi)) == psi


def test_serialization_m_zero():
    psi = TypeI((W(2), W(1)), (), ((), ()))
    assert loads(dumps(psi)) == psi


def test_describe():
    text = describe(TypeI((W(2), W(1)), [[1]], [[1], [0]]))
    assert text.splitlines() == [
        "type I endomorphism of Z^1 x F_2",
        "  t1 -> (1; 1)",
        "  x1 -> (1; x2)",
        "  x2 -> (0; x1)",
    ]


def test_generators_order():
    gens = generators(2, 2)
    assert [str(g) for g in gens] == ["(1,0; 1)", "(0,1; 1)", "(0,0; x1)", "(0,0; x2)"]
