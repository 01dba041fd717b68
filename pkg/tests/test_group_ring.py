from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import group_ring_elements
from l2betti.errors import GroupMismatch, NonRealTrace, NotIdempotent, UnsupportedGroup
from l2betti.group_ring import (
    CrossedProductElement,
    GroupRingElement,
    GroupRingMatrix,
    dim_from_idempotent,
    regular_representation,
    trace,
    trace_property_check,
)
from l2betti.groups import FiniteGroup, FreeAbelianGroup, FreeGroup, ball, infinite_dihedral
from l2betti.scalars import G0, G1, GaussianRational

F2 = FreeGroup(2)
C2 = FiniteGroup.cyclic(2)
S3 = FiniteGroup.dihedral(3)
D = infinite_dihedral()
Z1 = FreeAbelianGroup(1)

x = GroupRingElement.of(F2, (1,))
y = GroupRingElement.of(F2, (2,))
e2 = GroupRingElement.one(C2)
g2 = GroupRingElement.of(C2, 1)

free_elems = group_ring_elements(F2, ball(F2, 2))
s3_elems = group_ring_elements(S3, list(S3.elements()))
z_elems = group_ring_elements(Z1, [(k,) for k in range(-2, 3)], real=True)


@st.composite
def crossed_elems(draw):
    out = CrossedProductElement.zero(D)
    for h in (0, 1):
        out = out + CrossedProductElement(D, {h: draw(z_elems)})
    return out


def test_trace_examples():
    a = 2 + 3 * x + Fraction(1, 2) * x ** -1
    assert trace(a) == 2
    assert trace(GroupRingElement.zero(F2)) == 0
    assert trace(x * x ** -1) == 1


def test_trace_property_examples():
    assert trace_property_check(x, x ** -1)
    a = 3 * e2 + 2 * g2
    b = e2 - 5 * g2
    # (3e + 2g)(e - 5g) = 3e - 15g + 2g - 10e, trace -7 either way
    assert trace(a * b) == -7 == trace(b * a)
    assert trace_property_check(a, b)
    assert trace_property_check(x + 2 * y, y ** -1 - x ** -1 * y)


@settings(max_examples=200)
@given(free_elems, free_elems)
def test_trace_property_free_group(a, b):
    assert trace_property_check(a, b)


@given(s3_elems, s3_elems, s3_elems)
def test_ring_axioms_finite(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a * 1 == a == 1 * a


@settings(max_examples=50)
@given(free_elems, free_elems, free_elems)
def test_ring_axioms_free(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(free_elems, free_elems)
def test_involution(a, b):
    assert (a * b).star() == b.star() * a.star()
    assert a.star().star() == a


@given(free_elems)
def test_trace_is_faithful_on_group_ring(a):
    t = trace(a.star() * a)
    assert t == sum((c.norm() for c in a.terms.values()), Fraction(0))
    assert (t == 0) == (not a)


@settings(max_examples=60)
@given(crossed_elems(), crossed_elems(), crossed_elems())
def test_crossed_product_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_crossed_product_relation():
    z = CrossedProductElement.of(D, ((1,), 0))
    s = CrossedProductElement.mu(D, 1)
    assert s * z == z ** -1 * s
    assert s * s == 1
    assert str(z * s) == "z*s"
    assert str((z + 1) * s) == "(1 + z)*s"


def test_regular_representation_finite_example():
    rows = regular_representation(e2 + g2)
    assert rows == [[G1, G1], [G1, G1]]
    ident = regular_representation(GroupRingElement.one(S3))
    assert ident == [[G1 if i == j else G0 for j in range(6)] for i in range(6)]


def test_regular_representation_crossed_example():
    # z*mu(s) sends mu(e) to mu(s) z^-1 and mu(s) to z mu(e)
    a = CrossedProductElement.of(D, ((1,), 1))
    m = regular_representation(a)
    z = GroupRingElement.of(Z1, (1,))
    expected = GroupRingMatrix(Z1, [[0, z], [z ** -1, 0]])
    assert m == expected
    assert regular_representation(CrossedProductElement.one(D)) == GroupRingMatrix.identity(Z1, 2)


@given(s3_elems, s3_elems)
def test_regular_representation_is_multiplicative_finite(a, b):
    def mul(p, q):
        n = len(p)
        return [[sum((p[i][k] * q[k][j] for k in range(n)), G0) for j in range(n)] for i in range(n)]

    assert regular_representation(a * b) == mul(regular_representation(a), regular_representation(b))


@settings(max_examples=60)
@given(crossed_elems(), crossed_elems())
def test_regular_representation_is_multiplicative_crossed(a, b):
    assert regular_representation(a * b) == regular_representation(a) @ regular_representation(b)


def test_regular_representation_unsupported():
    with pytest.raises(UnsupportedGroup):
        regular_representation(x)


def test_dim_from_idempotent_examples():
    p = GroupRingMatrix(C2, [[(e2 + g2) / 2]])
    assert dim_from_idempotent(p) == Fraction(1, 2)
    assert dim_from_idempotent(GroupRingMatrix.identity(C2, 1)) == 1
    assert dim_from_idempotent(GroupRingMatrix.zeros(C2, 1, 1)) == 0


def test_dim_from_idempotent_errors():
    with pytest.raises(NotIdempotent):
        dim_from_idempotent(GroupRingMatrix(C2, [[e2 + g2]]))
    with pytest.raises(NotIdempotent):
        dim_from_idempotent(GroupRingMatrix.zeros(C2, 1, 2))


def test_idempotent_traces_are_real():
    # [[a, 1], [a(1 - a), 1 - a]] is idempotent for any a; its trace sum stays 1 even for complex a
    a = GaussianRational(Fraction(1, 2), Fraction(1, 2))
    p = GroupRingMatrix(C2, [[a, 1], [a * (1 - a), 1 - a]])
    assert p @ p == p
    assert dim_from_idempotent(p) == 1


def test_non_real_trace_rejected(monkeypatch):
    # genuine idempotents have real trace, so simulate corrupted input by disabling the idempotence test
    monkeypatch.setattr(GroupRingMatrix, "__eq__", lambda self, other: True)
    i = GaussianRational(0, 1)
    with pytest.raises(NonRealTrace):
        dim_from_idempotent(GroupRingMatrix(C2, [[GroupRingElement.scalar(C2, i)]]))


@settings(max_examples=40)
@given(free_elems)
def test_idempotent_dimension_is_conjugation_invariant(a):
    u = GroupRingMatrix(F2, [[1, a], [0, 1]])
    u_inv = GroupRingMatrix(F2, [[1, -a], [0, 1]])
    p = GroupRingMatrix(F2, [[1, 0], [0, 0]])
    q = u @ p @ u_inv
    assert q @ q == q
    assert dim_from_idempotent(q) == dim_from_idempotent(p) == 1


def test_matrix_shape_errors():
    with pytest.raises(ValueError):
        GroupRingMatrix(F2, [[x], [x, y]])
    with pytest.raises(GroupMismatch):
        GroupRingMatrix(F2, [[e2]])
    with pytest.raises(ValueError):
        GroupRingMatrix(F2, [[x]]) @ GroupRingMatrix(F2, [[x, y], [y, x]])


def test_element_string_forms():
    a = GroupRingElement(F2, {(1, 1, -2): GaussianRational(Fraction(3, 2), Fraction(1, 2))})
    assert str(a) == "(3/2+1/2i)*x^2*y^-1"
    assert str(x - 1) == "-1 + x"
    assert str(GroupRingElement.zero(F2)) == "0"
