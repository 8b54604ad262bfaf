"""Field arithmetic, etale structure maps, and the linear solver contract."""

import pytest
from conftest import seeded

from albertkit import (
    QQ,
    AlgebraError,
    EtaleQuadratic,
    FiniteField,
    NotEtale,
    QuadraticFieldExtension,
    RationalFunctionField,
    make_etale_quadratic,
)
from albertkit.errors import NoSolution
from albertkit.fields import Poly, solve_additive_poly
from albertkit.linalg import solve_linear


F2 = FiniteField(2)
F3 = FiniteField(3)
F4 = FiniteField(2, 2)
F5 = FiniteField(5)
F9 = FiniteField(3, 2)
Qt = RationalFunctionField(QQ, "t")
F2t = RationalFunctionField(F2, "t")


@pytest.mark.parametrize("field", [F2, F3, F4, F5, F9])
def test_finite_field_axioms(field):
    elems = list(field.elements())
    assert len(elems) == field.order
    one = field.one()
    for a in elems:
        assert a + field.zero() == a
        assert a * one == a
        if a:
            assert a * field.inv(a) == one
    for a in elems[:6]:
        for b in elems[:6]:
            assert a + b == b + a
            assert a * b == b * a


def test_frobenius_is_automorphism_f4():
    for a in F4.elements():
        for b in F4.elements():
            assert (a + b) * (a + b) == a * a + b * b


def test_rational_function_field_exact():
    t = Qt.gen()
    x = (t * t - 1) / (t + 1)
    assert x == t - 1
    assert Qt.is_square((t + 1) * (t + 1))
    assert not Qt.is_square(t)
    y = Qt.sqrt((t * t + 2 * t + 1))
    assert y * y == t * t + 2 * t + 1


def test_quadratic_extension_inverse_and_sqrt():
    K = QuadraticFieldExtension(QQ, 0, 2)
    w = K.gen()
    rng = seeded(7)
    for _ in range(200):
        x = K.random_element(rng, 6)
        if not x:
            continue
        assert x * K.inv(x) == K.one()
    assert K.is_square(K.from_int(2))
    assert K.sqrt(K.from_int(2)) in (w, -w)
    assert not K.is_square(K.from_int(3))


def test_monic_quadratic_roots():
    assert QQ.monic_quadratic_roots(-3, 2) == [1, 2]
    assert QQ.monic_quadratic_roots(0, 1) == []
    t = Qt.gen()
    roots = Qt.monic_quadratic_roots(-(t + (t + 1)), t * (t + 1))
    assert sorted(r == t for r in roots).count(True) == 1
    # characteristic 2: Artin-Schreier reduction
    tt = F2t.gen()
    roots = F2t.monic_quadratic_roots(F2t.one(), tt * tt + tt)
    assert roots and all(r * r + r == tt * tt + tt for r in roots)


def test_solve_additive_poly():
    m = Poly(F2, (0, 1))  # t
    # W^2 + t W = t^4 + t^3  has W = t^2 (t^4 + t^3 = t^4 + t*t^2? no: check)
    N = Poly(F2, (0, 0, 0, 1, 1))
    sols = solve_additive_poly(F2, m, N)
    for W in sols:
        assert (W * W + m * W + N).is_zero()


def test_make_etale_examples():
    K = make_etale_quadratic(QQ, (0, 2))
    w = K.w
    assert K.gamma(w) == -w
    K4 = make_etale_quadratic(F2, (1, 1))
    assert K4.w * K4.w == K4.w + K4.ring.one()
    assert K4.gamma(K4.w) == K4.w + K4.ring.one()
    with pytest.raises(NotEtale):
        make_etale_quadratic(F2, (0, 1))


def test_split_presentation_of_split_polynomial():
    # x^2 - 1 splits over Q: the etale algebra degenerates to Q x Q
    K = make_etale_quadratic(QQ, (0, 1))
    assert K.kind == "split"


@pytest.mark.parametrize(
    "ext",
    [
        EtaleQuadratic(QQ, (0, 2)),
        EtaleQuadratic(QQ, "split"),
        EtaleQuadratic(F2, (1, 1)),
        EtaleQuadratic(F3, (0, -1)),
        EtaleQuadratic(F2t, (1, F2t.gen())),
    ],
)
def test_etale_invariants(ext):
    rng = seeded(11)
    base = ext.base
    one = ext.one()
    for _ in range(500):
        x = ext.random_element(rng, 4)
        assert ext.gamma(ext.gamma(x)) == x
        a, b = ext.coords(x)
        fixed = ext.gamma(x) == x
        assert fixed == base.is_zero(b)
        # trace and norm land in the base field by construction; check the
        # defining quadratic x^2 - T x + N = 0
        T = ext.trace(x)
        N = ext.norm(x)
        lhs = x * x - ext.from_base(T) * x + ext.from_base(N) * one
        assert not lhs


def test_s_functional():
    K = EtaleQuadratic(QQ, (0, 2))
    assert K.s(K.from_pair(3, 5)) == 5
    assert K.s(K.one()) == 0
    K4 = EtaleQuadratic(F2, (1, 1))
    assert K4.s(K4.one()) == F2.zero()
    assert K4.s(K4.w) == F2.one()
    Ks = EtaleQuadratic(QQ, "split")
    assert Ks.s(Ks.ring.pair(1, 1)) == 0
    assert Ks.s(Ks.ring.pair(0, 1)) == 1
    rng = seeded(3)
    for _ in range(100):
        x, y = K.random_element(rng), K.random_element(rng)
        lam, mu = QQ.random_element(rng), QQ.random_element(rng)
        combo = K.from_base(lam) * x + K.from_base(mu) * y
        assert K.s(combo) == lam * K.s(x) + mu * K.s(y)


def test_kappa():
    K = EtaleQuadratic(QQ, (0, 2))
    k = K.kappa()
    assert K.gamma(k) == -k and k
    assert K.s(k) != 0
    assert EtaleQuadratic(F2, (1, 1)).kappa() == EtaleQuadratic(F2, (1, 1)).ring.one()
    ks = EtaleQuadratic(QQ, "split").kappa()
    assert (ks.a, ks.b) == (1, -1)


def test_solve_linear_contract():
    ident = [(QQ.one(), QQ.zero()), (QQ.zero(), QQ.one())]
    assert solve_linear(ident, QQ, mode="kernel") == []
    zero2 = [(F2.zero(), F2.zero()), (F2.zero(), F2.zero())]
    assert len(solve_linear(zero2, F2, mode="kernel", ncols=2)) == 2
    rows = [(QQ.one(), QQ.one()), (QQ.zero(), QQ.zero())]
    sol = solve_linear(rows, QQ, mode="solve", rhs=(QQ.one(), QQ.zero()))
    assert sol[0] + sol[1] == 1
    with pytest.raises(NoSolution):
        solve_linear(rows, QQ, mode="solve", rhs=(QQ.zero(), QQ.one()))


def test_context_mixing_is_hard_fault():
    with pytest.raises(AlgebraError):
        F3.one() + F5.one()
    with pytest.raises(AlgebraError):
        Qt.gen() * RationalFunctionField(QQ, "s").gen()
