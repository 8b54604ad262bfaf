"""Clifford algebras, Arf triviality, and the rank-64 isomorphism check."""

import pytest
from conftest import seeded

from albertkit import (
    QQ,
    EtaleQuadratic,
    FiniteField,
    QuadraticForm,
    QuaternionAlgebra,
    albert_form,
    arf_trivial,
    build_corestriction,
    clifford,
    clifford_iso_check,
    even_clifford_binary,
)
from albertkit.clifford import center_of_span, even_part_masks
from albertkit.errors import DimensionCap
from albertkit.forms import isometric_embedding
from albertkit.isotropy import rationally_equivalent

F2 = FiniteField(2)
F3 = FiniteField(3)


def test_dim_one_clifford():
    C = clifford(QuadraticForm.diagonal(QQ, [5]))
    e = C.generator(0)
    assert (e * e).coeff(0) == 5
    assert C.dim == 2


def test_dimension_cap():
    with pytest.raises(DimensionCap):
        clifford(QuadraticForm.diagonal(QQ, [1] * 7))


def test_hyperbolic_plane_clifford_splits():
    C = clifford(QuadraticForm.hyperbolic_plane(QQ))
    assert C.dim == 4
    e1, e2 = C.generator(0), C.generator(1)
    z = e1 * e2
    # e1 e2 is idempotent: (e1 e2)^2 = e1 (polar - e1 e2) e2 = e1 e2
    assert (z * z - z).is_zero()
    assert not z.is_zero() and not (z - C.one()).is_zero()


@pytest.mark.parametrize(
    "field,entries",
    [(QQ, [1, -1, 2]), (F2, None), (F3, [1, 1, 2, 1])],
)
def test_associativity_exhaustive(field, entries):
    if entries is None:
        form = QuadraticForm.binary(field, 1, 1).orthogonal_sum(
            QuadraticForm.binary(field, 0, 1)
        )
    else:
        form = QuadraticForm.diagonal(field, entries)
    C = clifford(form)
    masks = list(range(C.dim))
    for a in masks:
        for b in masks:
            ab = C.mul_masks(a, b)
            for c in masks:
                lhs = {}
                for m, co in ab.items():
                    for m2, co2 in C.mul_masks(m, c).items():
                        lhs[m2] = lhs.get(m2, field.zero()) + co * co2
                rhs = {}
                bc = C.mul_masks(b, c)
                for m, co in bc.items():
                    for m2, co2 in C.mul_masks(a, m).items():
                        rhs[m2] = rhs.get(m2, field.zero()) + co2 * co
                lhs = {m: v for m, v in lhs.items() if not field.is_zero(v)}
                rhs = {m: v for m, v in rhs.items() if not field.is_zero(v)}
                assert lhs == rhs


def test_even_part_and_center():
    form = QuadraticForm.hyperbolic_plane(QQ).orthogonal_sum(
        QuadraticForm.diagonal(QQ, [1, -1])
    )
    C = clifford(form)
    masks = even_part_masks(C)
    assert len(masks) == C.dim // 2
    center = center_of_span(C, masks)
    assert len(center) == 2


def test_arf_examples():
    trivial, cert = arf_trivial(QuadraticForm.hyperbolic_plane(QQ))
    assert trivial and cert["center_split"]
    z = cert["idempotent"]
    assert (z * z - z).is_zero()
    trivial, cert = arf_trivial(QuadraticForm.diagonal(QQ, [1, 1]))
    assert not trivial
    # characteristic 2: [1,1] has nontrivial Arf over F2, [0,0] trivial
    trivial, _ = arf_trivial(QuadraticForm.binary(F2, 1, 1))
    assert not trivial
    trivial, _ = arf_trivial(QuadraticForm.hyperbolic_plane(F2))
    assert trivial


def test_arf_scaling_invariance_char2():
    F4 = FiniteField(2, 2)
    form = QuadraticForm.binary(F4, F4.one(), F4.gen())
    base, _ = arf_trivial(form)
    for c in list(F4.elements())[1:]:
        scaled, _ = arf_trivial(form.scale(c))
        assert scaled == base


def test_center_constructed_matches_generic():
    rng = seeded(61)
    for field, dim in ((QQ, 4), (F3, 4), (F2, 4)):
        for _ in range(3):
            if field.char == 2:
                form = QuadraticForm.binary(field, field.random_element(rng), field.random_element(rng))
                form = form.orthogonal_sum(
                    QuadraticForm.binary(field, field.random_element(rng), field.random_element(rng))
                )
            else:
                entries = []
                for _ in range(dim):
                    while True:
                        c = field.random_element(rng)
                        if not field.is_zero(c):
                            break
                    entries.append(c)
                form = QuadraticForm.diagonal(field, entries)
            C = clifford(form)
            generic = center_of_span(C, even_part_masks(C))
            assert len(generic) == 2


def test_even_clifford_binary_and_norm_similarity():
    form = QuadraticForm(QQ, [[2, 3], [0, -1]])
    p, q = even_clifford_binary(form)
    assert p == 3 and q == -2
    # the norm form of Q[X]/(X^2 - pX + q) is c11 * form
    norm_form = QuadraticForm(QQ, [[QQ.one(), p], [QQ.zero(), q]])
    scaled = form.scale(form.upper[0][0])
    emb = isometric_embedding(norm_form, scaled, height=6)
    assert emb is not None
    assert rationally_equivalent(norm_form, scaled)


def test_clifford_iso_rank64():
    ext = EtaleQuadratic(QQ, (0, 2))
    K = ext.ring
    Q = QuaternionAlgebra(K, K.zero(), K.from_int(-1), K.from_int(-1))
    ad = albert_form(ext, Q)
    cor = build_corestriction(ext, Q)
    rep = clifford_iso_check(ad, cor)
    assert rep["rank"] == 64
    # split degeneration
    ext2 = EtaleQuadratic(QQ, "split")
    D = ext2.ring
    Q2 = QuaternionAlgebra(D, D.zero(), D.from_int(-1), D.from_int(-1))
    ad2 = albert_form(ext2, Q2)
    cor2 = build_corestriction(ext2, Q2)
    rep2 = clifford_iso_check(ad2, cor2)
    assert rep2["rank"] == 64
