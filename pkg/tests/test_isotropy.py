"""Isotropy oracles: Hilbert symbols, Hasse-Minkowski, Springer, Witt."""

import pytest
from conftest import random_nonsingular_form, seeded
from fractions import Fraction

from albertkit import (
    QQ,
    FiniteField,
    QuadraticForm,
    QuadraticFieldExtension,
    RationalFunctionField,
    bounded_search,
    hasse_minkowski,
    hilbert_symbol,
    isotropy,
    springer_reduce,
    witt_decompose,
    witt_index,
)
from albertkit.errors import NotApplicable
from albertkit.isotropy import _factor_int, squarefree_part

F3 = FiniteField(3)
F5 = FiniteField(5)
Qt = RationalFunctionField(QQ, "t")


def test_hilbert_symbol_examples():
    assert hilbert_symbol(-1, -1, "inf") == -1
    assert hilbert_symbol(-1, -1, 3) == 1
    assert hilbert_symbol(1, Fraction(7, 3), 5) == 1
    assert hilbert_symbol(2, 3, 2) == -1  # x^2: 2x^2+3y^2=z^2 has no 2-adic point


def test_hilbert_reciprocity():
    rng = seeded(13)
    for _ in range(200):
        a = Fraction(rng.randint(1, 50) * rng.choice([1, -1]), rng.randint(1, 50))
        b = Fraction(rng.randint(1, 50) * rng.choice([1, -1]), rng.randint(1, 50))
        places = {"inf", 2}
        for val in (a, b):
            for p in _factor_int(squarefree_part(val)):
                places.add(p)
        prod = 1
        for v in places:
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1


def test_hasse_minkowski_examples():
    assert isotropy(QuadraticForm.diagonal(QQ, [1, 1, 1, 1])).is_anisotropic
    assert isotropy(QuadraticForm.diagonal(QQ, [1, -2])).is_anisotropic
    v = isotropy(QuadraticForm.diagonal(QQ, [1, 1, 1, 1, 1, -7]))
    assert v.is_isotropic and v.witness is not None
    assert isotropy(QuadraticForm.diagonal(QQ, [-1, -1, -1, -2, -5, -10])).is_anisotropic
    v = isotropy(QuadraticForm.diagonal(QQ, [1, -1]))
    assert v.is_isotropic and v.witness == (Fraction(1), Fraction(1))
    # local-condition dimensions
    assert isotropy(QuadraticForm.diagonal(QQ, [1, 1, -3])).is_anisotropic
    assert isotropy(QuadraticForm.diagonal(QQ, [1, 1, -2])).is_isotropic
    assert isotropy(QuadraticForm.diagonal(QQ, [1, 3, -2, -6])).is_anisotropic
    assert isotropy(QuadraticForm.diagonal(QQ, [1, 1, -2, -7])).is_isotropic


def test_bounded_search_examples():
    hyp = QuadraticForm.hyperbolic_plane(QQ)
    v = bounded_search(hyp, 1)
    assert v.is_isotropic and v.witness == (Fraction(1), Fraction(0))
    v = bounded_search(QuadraticForm.diagonal(QQ, [1, 1]), 10)
    assert v.status == "unknown" and v.height == 10
    v = bounded_search(QuadraticForm.diagonal(QQ, [1, 1, -3]), 2)
    assert v.status == "unknown"  # 3 is not a sum of two rational squares


def test_springer_examples():
    t = Qt.gen()
    v = springer_reduce(QuadraticForm.diagonal(Qt, [Qt.one(), -t]))
    assert v.is_anisotropic
    v = springer_reduce(QuadraticForm.diagonal(Qt, [Qt.one(), -Qt.one(), t]))
    assert v.is_isotropic
    v = springer_reduce(
        QuadraticForm.diagonal(Qt, [-Qt.one(), -Qt.one(), -Qt.one(), Qt.from_int(-2), -t, 2 * t])
    )
    assert v.is_anisotropic
    with pytest.raises(NotApplicable):
        springer_reduce(QuadraticForm.diagonal(Qt, [t + 1]))


def test_springer_witness_lifting():
    t = Qt.gen()
    # both residue forms anisotropic over Q: anisotropic over Q(t)
    form = QuadraticForm.diagonal(Qt, [Qt.from_int(3), t, -2 * t])
    assert isotropy(form).is_anisotropic
    # odd-parity residue class <1, -1> carries the witness here
    form2 = QuadraticForm.diagonal(Qt, [Qt.from_int(3), t, -t])
    v2 = isotropy(form2)
    assert v2.is_isotropic and Qt.is_zero(form2.evaluate(v2.witness))
    # witness lifting across valuations: t^3 slot needs a t-power rescale
    form3 = QuadraticForm.diagonal(Qt, [Qt.from_int(3), t * t * t, -t])
    v3 = isotropy(form3)
    assert v3.is_isotropic and Qt.is_zero(form3.evaluate(v3.witness))


def test_witt_decompose_examples():
    hyp = QuadraticForm.hyperbolic_plane(QQ)
    wd = witt_decompose(hyp)
    assert wd.hyperbolic_count == 1 and wd.kernel.n == 0
    wd = witt_decompose(QuadraticForm.diagonal(F5, [1, 1, 1, 1]))
    assert wd.hyperbolic_count == 2
    # radical contribution counts toward the Witt index
    deg = QuadraticForm.diagonal(F5, [1, 0, -1])
    wd = witt_decompose(deg)
    assert wd.radical_dim == 1 and wd.hyperbolic_count == 1
    assert wd.witt_index == 2


def test_witt_index_additivity():
    rng = seeded(17)
    hyp = QuadraticForm.hyperbolic_plane(QQ)
    for _ in range(10):
        phi = random_nonsingular_form(QQ, rng.choice([2, 3]), rng, size=3)
        base = witt_index(phi)
        assert witt_index(phi.orthogonal_sum(hyp)) == base + 1


def test_definiteness_over_real_quadratic():
    K = QuadraticFieldExtension(QQ, 0, 2)
    w = K.gen()
    n_hamilton = QuadraticForm.diagonal(K, [1, 1, 1, 1])
    v = isotropy(n_hamilton)
    assert v.is_anisotropic and v.method == "definiteness"
    mixed = QuadraticForm.diagonal(K, [K.one(), -w])  # sqrt2 is positive at one embedding
    v = isotropy(mixed)
    assert v.decided


def test_dim2_square_test_over_quadratic_field():
    K = QuadraticFieldExtension(QQ, 0, 2)
    w = K.gen()
    form = QuadraticForm.diagonal(K, [K.one(), -(w + 3)])  # 3+sqrt2 = N? not a square
    v = isotropy(form)
    assert v.decided
    sq = QuadraticForm.diagonal(K, [K.one(), -(3 + 2 * w + w * w)])  # -(1+w)^2... (1+w)^2 = 3+2w
    v2 = isotropy(QuadraticForm.diagonal(K, [K.one(), -(3 + 2 * w)]))
    assert v2.is_isotropic


def test_hm_isotropic_implies_search_witness():
    rng = seeded(71)
    checked = 0
    while checked < 30:
        dim = rng.randint(2, 4)
        entries = [rng.choice([v for v in range(-10, 11) if v]) for _ in range(dim)]
        form = QuadraticForm.diagonal(QQ, entries)
        verdict = hasse_minkowski(form)
        checked += 1
        if verdict.is_isotropic:
            found = bounded_search(form, 40)
            assert found.is_isotropic


def test_radical_shortcut():
    form = QuadraticForm.diagonal(QQ, [1, 0, -3])
    v = isotropy(form)
    assert v.is_isotropic and v.method == "radical"


def test_witt_radical_bookkeeping_char2():
    F4 = FiniteField(2, 2)
    w = F4.gen()
    # [1,1] (isotropic over F4) + <w> + a zero line
    phi = QuadraticForm.binary(F4, F4.one(), F4.one()).orthogonal_sum(
        QuadraticForm.diagonal(F4, [w, F4.zero()])
    )
    wd = witt_decompose(phi)
    assert wd.radical_dim == 1
    assert wd.hyperbolic_count == 1
    assert wd.kernel.n == 1
    assert wd.witt_index == 2


def test_remark1_over_finite_extension():
    from albertkit import EtaleQuadratic, remark1_check

    F3 = FiniteField(3)
    ext9 = EtaleQuadratic(F3, (0, -1))
    K9 = ext9.ring
    phi = QuadraticForm.diagonal(K9, [K9.from_int(1), K9.from_int(2)])
    assert remark1_check(ext9, phi)


def test_structured_vs_enumeration_sampled_larger_fields():
    from albertkit.isotropy import enumeration_isotropy, structured_finite_isotropy

    rng = seeded(73)
    for field in (FiniteField(7), FiniteField(3, 2)):
        elems = list(field.elements())
        for _ in range(25):
            dim = rng.randint(1, 6)
            rows = [
                [rng.choice(elems) if j >= i else field.zero() for j in range(dim)]
                for i in range(dim)
            ]
            form = QuadraticForm(field, rows)
            assert enumeration_isotropy(form).status == structured_finite_isotropy(form)


def test_char2_function_field_oracle():
    F2 = FiniteField(2)
    F2t = RationalFunctionField(F2, "t")
    t = F2t.gen()
    # [1, t]: isotropic iff X^2 + X + t solvable: it is not (odd degree)
    blk = QuadraticForm.binary(F2t, F2t.one(), t)
    assert isotropy(blk).is_anisotropic
    # [1, t^2+t] is isotropic (X = t works)
    blk2 = QuadraticForm.binary(F2t, F2t.one(), t * t + t)
    v = isotropy(blk2)
    assert v.is_isotropic
    # dimension 6 forms over a C2 field always end up isotropic
    big = blk
    for _ in range(2):
        big = big.orthogonal_sum(blk)
    v = isotropy(big)
    assert v.is_isotropic
