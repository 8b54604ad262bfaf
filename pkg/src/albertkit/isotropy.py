"""Isotropy oracles and Witt decomposition.

Verdicts are complete over finite fields (enumeration) and over Q
(Hasse-Minkowski); over rational function fields the oracle combines a
Springer-type reduction at t, constant-coefficient reduction, and the
C2 bound (any quadratic form in five or more variables over F_q(t) is
isotropic); over real quadratic extensions of Q anisotropy can be
certified by definiteness under a real embedding.  Everything else is a
semi-decision by bounded search, reported as Unknown rather than guessed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    AlgebraError,
    InternalContradiction,
    NotApplicable,
    OracleIncomplete,
)
from .fields import (
    QQ,
    QuadraticFieldExtension,
    RatFuncElem,
    RationalField,
    RationalFunctionField,
    primitive_int_vectors,
)
from .forms import QuadraticForm, orthogonalize, solve_polar_equal_one

DEFAULT_HEIGHT = 12
ISOTROPIC = "isotropic"
ANISOTROPIC = "anisotropic"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class IsotropyVerdict:
    status: str
    witness: tuple | None
    method: str
    height: int | None = None

    @property
    def is_isotropic(self):
        return self.status == ISOTROPIC

    @property
    def is_anisotropic(self):
        return self.status == ANISOTROPIC

    @property
    def decided(self):
        return self.status != UNKNOWN


def isotropic_verdict(form, witness, method, height=None):
    f = form.field
    witness = tuple(f.coerce(c) for c in witness)
    if linalg.is_zero_vec(witness, f) or not f.is_zero(form.evaluate(witness)):
        raise InternalContradiction("bad isotropy witness from method %s" % method)
    return IsotropyVerdict(ISOTROPIC, witness, method, height)


def anisotropic_verdict(method):
    return IsotropyVerdict(ANISOTROPIC, None, method)


def unknown_verdict(height):
    return IsotropyVerdict(UNKNOWN, None, "budget", height)


# ---------------------------------------------------------------------------
# candidate enumeration
# ---------------------------------------------------------------------------


def projective_points(field, n, h):
    """Projective candidate vectors that are new at height h."""
    if field.enumerable:
        if h != 1:
            return
        elems = list(field.elements())
        one = field.one()
        zero = field.zero()
        for k in range(n):
            for tail in itertools.product(elems, repeat=n - k - 1):
                yield (zero,) * k + (one,) + tail
        return
    if isinstance(field, RationalField):
        for vec in primitive_int_vectors(n, h):
            yield tuple(Fraction(c) for c in vec)
        return
    if isinstance(field, QuadraticFieldExtension) and isinstance(field.base, RationalField):
        for vec in primitive_int_vectors(2 * n, h):
            yield tuple(field.from_pair(vec[2 * i], vec[2 * i + 1]) for i in range(n))
        return
    if isinstance(field, RationalFunctionField):
        base = field.base
        if base.enumerable:
            deg = h - 1
            elems = list(base.elements())
            polys = []
            for d in range(deg + 1):
                for coeffs in itertools.product(elems, repeat=d + 1):
                    if d > 0 and base.is_zero(coeffs[-1]):
                        continue
                    polys.append(field.poly_elem(coeffs))
            zero = field.zero()
            for vec in itertools.product(polys + [zero], repeat=n):
                if all(v == zero for v in vec):
                    continue
                if max((v.num.degree for v in vec if v != zero), default=-1) != deg:
                    continue
                yield vec
            return
        # integer-coefficient polynomials over Q(t), low degree
        coeff_range = [Fraction(c) for c in range(-h, h + 1)]
        maxdeg = min(2, h - 1)
        polys = []
        for d in range(maxdeg + 1):
            for coeffs in itertools.product(coeff_range, repeat=d + 1):
                if d > 0 and coeffs[-1] == 0:
                    continue
                if coeffs and max((abs(c) for c in coeffs), default=0) == h:
                    polys.append(field.poly_elem(coeffs))
        small = []
        for d in range(maxdeg + 1):
            for coeffs in itertools.product([Fraction(c) for c in range(-(h - 1), h)], repeat=d + 1):
                if d > 0 and coeffs[-1] == 0:
                    continue
                small.append(field.poly_elem(coeffs))
        for vec in itertools.product(polys + small, repeat=n):
            if all(not v for v in vec):
                continue
            if not any(p in polys for p in vec):
                continue
            yield vec
        return
    if isinstance(field, QuadraticFieldExtension) and isinstance(field.base, RationalFunctionField):
        for vec in projective_points(field.base, 2 * n, h):
            yield tuple(field.from_pair(vec[2 * i], vec[2 * i + 1]) for i in range(n))
        return
    raise AlgebraError("no candidate enumeration for %s" % field.name)


def bounded_search(form, height=DEFAULT_HEIGHT):
    """Exhaustive projective search up to the height bound."""
    f = form.field
    if form.n == 0:
        return anisotropic_verdict("empty")
    hmax = 1 if f.enumerable else height
    for h in range(1, hmax + 1):
        for vec in projective_points(f, form.n, h):
            if f.is_zero(form.evaluate(vec)):
                return isotropic_verdict(form, vec, "search", h)
    if f.enumerable:
        return anisotropic_verdict("enumeration")
    return unknown_verdict(height)


def enumeration_isotropy(form):
    """Complete enumeration verdict over an enumerable field."""
    if not form.field.enumerable:
        raise AlgebraError("enumeration requires an enumerable field")
    return bounded_search(form, 1)


def structured_finite_isotropy(form):
    """Verdict over a finite field by scalar-level rules, no vector scans.

    Rules: a nonzero radical vector is a witness; regular forms in three
    or more variables are isotropic (Chevalley-Warning); binary regular
    forms reduce to a square-class or Artin-Schreier condition.  Returns
    the status only (no witness).
    """
    f = form.field
    if not f.enumerable:
        raise AlgebraError("structured rules need a finite field")
    if form.n == 0:
        return ANISOTROPIC
    cls = form.classify()
    if cls.rad_basis:
        return ISOTROPIC
    if form.n == 1:
        return ANISOTROPIC
    if form.n >= 3:
        return ISOTROPIC
    # regular binary forms
    if f.char != 2:
        basis = orthogonalize(form)
        d0, d1 = form.evaluate(basis[0]), form.evaluate(basis[1])
        return ISOTROPIC if f.is_square(-d1 / d0) else ANISOTROPIC
    B = form.polar_matrix()
    if f.is_zero(B[0][1]):
        # totally singular regular binary form over a perfect field has a
        # nonzero radical vector, handled above; reaching here means regular
        # with zero polar and no radical zero, impossible over perfect fields
        raise InternalContradiction("unexpected singular binary form")
    from .forms import symplectic_pairs

    (u, g), = symplectic_pairs(form)
    a, b = form.evaluate(u), form.evaluate(g)
    if f.is_zero(a) or f.is_zero(b):
        return ISOTROPIC
    # a x^2 + xy + b y^2 isotropic iff X^2 + X + ab has a root
    return ISOTROPIC if f.monic_quadratic_roots(f.one(), a * b) else ANISOTROPIC


# ---------------------------------------------------------------------------
# Hilbert symbols and Hasse-Minkowski over Q
# ---------------------------------------------------------------------------


def _factor_int(n):
    n = abs(n)
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_part(x):
    """The squarefree integer representing the square class of x in Q*."""
    x = QQ.coerce(x)
    if x == 0:
        raise AlgebraError("zero has no square class")
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in _factor_int(n).items():
        if e % 2:
            out *= p
    return out


def _legendre(a, p):
    a %= p
    if a == 0:
        raise AlgebraError("legendre symbol of 0")
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a, b, place):
    """Local Hilbert symbol (a, b) at a prime or at 'inf'."""
    a = squarefree_part(a)
    b = squarefree_part(b)
    if place == "inf":
        return -1 if (a < 0 and b < 0) else 1
    p = place
    alpha = 0
    while a % p == 0:
        a //= p
        alpha += 1
    beta = 0
    while b % p == 0:
        b //= p
        beta += 1
    if p != 2:
        out = 1
        if alpha % 2 and beta % 2 and (p - 1) // 2 % 2:
            out = -out
        if beta % 2:
            out *= _legendre(a, p)
        if alpha % 2:
            out *= _legendre(b, p)
        return out
    eps_a = ((a % 8) - 1) // 2 % 2
    eps_b = ((b % 8) - 1) // 2 % 2
    omega_a = (a * a - 1) // 8 % 2
    omega_b = (b * b - 1) // 8 % 2
    e = eps_a * eps_b + alpha * omega_b + beta * omega_a
    return -1 if e % 2 else 1


def _is_square_in_Qv(d, place):
    if place == "inf":
        return d > 0
    p = place
    v = 0
    while d % p == 0:
        d //= p
        v += 1
    if v % 2:
        return False
    if p == 2:
        return d % 8 == 1
    return _legendre(d, p) == 1


def _relevant_places(ds):
    places = {"inf", 2}
    for d in ds:
        for p in _factor_int(d):
            places.add(p)
    return ["inf"] + sorted(p for p in places if p != "inf")


def rational_diagonalization(form):
    """Orthogonal basis and (nonzero) diagonal values for a regular Q-form."""
    basis = orthogonalize(form)
    vals = [form.evaluate(v) for v in basis]
    return basis, vals


def hasse_minkowski(form, height=DEFAULT_HEIGHT):
    """Complete isotropy decision for a regular quadratic form over Q.

    Dimension >= 5 is decided purely by the real signature; dimensions 3
    and 4 by local conditions through Hilbert symbols; the witness for an
    isotropic form is found by iterative deepening (termination is
    guaranteed because existence is already proven).
    """
    f = form.field
    if not isinstance(f, RationalField):
        raise AlgebraError("hasse_minkowski expects a form over Q")
    n = form.n
    if n == 0:
        return anisotropic_verdict("empty")
    basis, vals = rational_diagonalization(form)
    if any(v == 0 for v in vals):
        raise AlgebraError("hasse_minkowski expects a regular form")
    d = [squarefree_part(v) for v in vals]
    if n == 1:
        return anisotropic_verdict("dim1")
    isotropic = None
    method = None
    if n == 2:
        isotropic = squarefree_part(Fraction(-d[0] * d[1])) == 1
        method = "square-test"
        if isotropic:
            r = QQ.sqrt(-Fraction(vals[1], vals[0]))
            vec = tuple(r * a + b for a, b in zip(basis[0], basis[1]))
            return isotropic_verdict(form, vec, "square-test")
        return anisotropic_verdict(method)
    if n >= 5:
        pos = sum(1 for v in vals if v > 0)
        neg = n - pos
        isotropic = pos > 0 and neg > 0
        method = "signature"
    elif n == 3:
        dd = d[0] * d[1] * d[2]
        method = "hasse-minkowski"
        isotropic = True
        for v in _relevant_places(d):
            eps = 1
            for i in range(3):
                for j in range(i + 1, 3):
                    eps *= hilbert_symbol(d[i], d[j], v)
            if hilbert_symbol(-1, -dd, v) != eps:
                isotropic = False
                break
    else:  # n == 4
        dd = d[0] * d[1] * d[2] * d[3]
        method = "hasse-minkowski"
        isotropic = True
        for v in _relevant_places(d):
            if not _is_square_in_Qv(dd, v):
                continue
            eps = 1
            for i in range(4):
                for j in range(i + 1, 4):
                    eps *= hilbert_symbol(d[i], d[j], v)
            if eps != hilbert_symbol(-1, -1, v):
                isotropic = False
                break
    if not isotropic:
        return anisotropic_verdict(method)
    h = 1
    while True:
        for vec in projective_points(f, n, h):
            if f.is_zero(form.evaluate(vec)):
                return isotropic_verdict(form, vec, method + "+search", h)
        h += 1
        if h > 10000:
            raise InternalContradiction("no witness found for a proven-isotropic form")


def rational_invariants(form):
    """(dim, signature, disc square class, hasse symbols) over Q."""
    _, vals = rational_diagonalization(form)
    d = [squarefree_part(v) for v in vals]
    pos = sum(1 for v in vals if v > 0)
    disc = squarefree_part(Fraction(int(_prod(d))))
    places = _relevant_places(d)
    hasse = {}
    for v in places:
        eps = 1
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                eps *= hilbert_symbol(d[i], d[j], v)
        hasse[str(v)] = eps
    return {"dim": form.n, "positive": pos, "disc": disc, "hasse": hasse}


def rationally_equivalent(f1, f2):
    """Exact equivalence test for regular forms over Q via invariants."""
    a, b = rational_invariants(f1), rational_invariants(f2)
    if a["dim"] != b["dim"] or a["positive"] != b["positive"] or a["disc"] != b["disc"]:
        return False
    places = set(a["hasse"]) | set(b["hasse"])
    for v in places:
        pv = v if v == "inf" else int(v)
        ea = a["hasse"].get(v)
        if ea is None:
            ea = _hasse_at(f1, pv)
        eb = b["hasse"].get(v)
        if eb is None:
            eb = _hasse_at(f2, pv)
        if ea != eb:
            return False
    return True


def _hasse_at(form, place):
    _, vals = rational_diagonalization(form)
    d = [squarefree_part(v) for v in vals]
    eps = 1
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            eps *= hilbert_symbol(d[i], d[j], place)
    return eps


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


# ---------------------------------------------------------------------------
# definiteness certificates over ordered fields
# ---------------------------------------------------------------------------


def _leading_minors(B, field):
    out = []
    for k in range(1, len(B) + 1):
        out.append(linalg.det([row[:k] for row in B[:k]], field))
    return out


def definiteness_certificate(form):
    """True when the form is definite under some real embedding.

    Supports Q itself and real quadratic extensions of Q; definiteness
    proves anisotropy exactly.
    """
    f = form.field
    if form.n == 0:
        return False
    B = [list(r) for r in form.polar_matrix()]
    if isinstance(f, RationalField):
        embeddings = [lambda x: (x > 0) - (x < 0)]
    elif isinstance(f, QuadraticFieldExtension) and isinstance(f.base, RationalField):
        D = f.alpha * f.alpha + 4 * f.beta
        if D <= 0:
            return False
        embeddings = [
            lambda x: f.real_embedding_signs(x)[0],
            lambda x: f.real_embedding_signs(x)[1],
        ]
    else:
        return False
    minors = _leading_minors(B, f)
    for emb in embeddings:
        signs = [emb(m) for m in minors]
        if all(s == 1 for s in signs):
            return True
        if all(s == (-1) ** (k + 1) for k, s in enumerate(signs)):
            return True
    return False


# ---------------------------------------------------------------------------
# Springer reduction at t and other function-field rules
# ---------------------------------------------------------------------------


def _monomial_data(entry):
    """(coefficient, exponent) when a function-field entry is c * t^e."""
    num, den = entry.num, entry.den
    if sum(1 for c in num.coeffs if not num.base.is_zero(c)) != 1:
        return None
    if sum(1 for c in den.coeffs if not den.base.is_zero(c)) != 1:
        return None
    e_num = num.degree
    e_den = den.degree
    c = num.coeffs[e_num] / den.coeffs[e_den]
    return c, e_num - e_den


def springer_reduce(form, height=DEFAULT_HEIGHT):
    """Springer reduction at the place t for t-monomial diagonal forms.

    Requires residue characteristic != 2.  Complete for this shape: both
    residue forms anisotropic proves anisotropy over the function field,
    and a residue witness lifts exactly by valuation-parity scaling.
    """
    f = form.field
    if not isinstance(f, RationalFunctionField):
        raise NotApplicable("springer reduction needs a function field")
    if f.char == 2:
        raise NotApplicable("residue characteristic 2")
    for i in range(form.n):
        for j in range(i + 1, form.n):
            if not f.is_zero(form.upper[i][j]):
                raise NotApplicable("form is not diagonal")
    data = []
    for i in range(form.n):
        md = _monomial_data(form.upper[i][i])
        if md is None:
            raise NotApplicable("entry %d is not a t-monomial" % i)
        data.append(md)
    classes = {0: [], 1: []}
    for i, (c, e) in enumerate(data):
        classes[e % 2].append((i, c, e))
    base = f.base
    for parity in (0, 1):
        cls = classes[parity]
        if not cls:
            continue
        residue = QuadraticForm.diagonal(base, [c for (_, c, _) in cls])
        verdict = isotropy(residue, height=height)
        if verdict.status == UNKNOWN:
            raise NotApplicable("residue oracle undecided")
        if verdict.is_isotropic:
            vec = [f.zero()] * form.n
            t = f.gen()
            for (idx, _c, e), comp in zip(cls, verdict.witness):
                m = (e - parity) // 2
                lift = f.from_base(comp)
                if m > 0:
                    for _ in range(m):
                        lift = lift / t
                elif m < 0:
                    for _ in range(-m):
                        lift = lift * t
                vec[idx] = lift
            return isotropic_verdict(form, vec, "springer-lift")
    return anisotropic_verdict("springer")


def _constant_reduction(form):
    """Decide a constant-coefficient form over F(t) through F."""
    f = form.field
    base = f.base
    rows = []
    for row in form.upper:
        out = []
        for c in row:
            if c.den.degree != 0 or c.num.degree > 0:
                return None
            out.append(c.num.coeffs[0] if c.num.coeffs else base.zero())
        rows.append(out)
    const_form = QuadraticForm(base, rows)
    verdict = isotropy(const_form)
    if verdict.is_isotropic:
        vec = tuple(f.from_base(c) for c in verdict.witness)
        return isotropic_verdict(form, vec, "constant-reduction")
    if verdict.is_anisotropic:
        return anisotropic_verdict("constant-reduction:" + verdict.method)
    return None


def _is_c2_function_field(field):
    if isinstance(field, RationalFunctionField) and field.base.enumerable:
        return True
    if isinstance(field, QuadraticFieldExtension):
        return _is_c2_function_field(field.base)
    return False


def _clear_denominators(f, vec):
    lcm = None
    for c in vec:
        d = c.den
        if lcm is None:
            lcm = d
        elif d.degree > 0:
            g = lcm.gcd(d)
            lcm = lcm.divmod(g)[0] * d
    scale = RatFuncElem(f, lcm, f.one().den, reduce=False)
    return tuple(c * scale for c in vec)


def char2_isotropic_stream(form, tail_height=1, max_tails=1500):
    """Isotropic vectors of a characteristic-2 form over F_q(t), streamed.

    The form splits into binary blocks along a symplectic basis (scaled to
    polynomial values); fixing small polynomial values on all but one block
    leaves an additive polynomial equation W^2 + m W = N, solved exactly,
    so witnesses of any degree are found.  Yields nothing when the polar
    form is degenerate.
    """
    from .fields import solve_additive_poly
    from .forms import symplectic_pairs

    f = form.field
    base = f.base
    try:
        raw_pairs = symplectic_pairs(form)
    except AlgebraError:
        return
    pairs = [
        (_clear_denominators(f, u), _clear_denominators(f, g)) for u, g in raw_pairs
    ]
    data = []
    for u, g in pairs:
        a = form.evaluate(u)
        b = form.evaluate(g)
        m = form.polar(u, g)
        if not a:
            yield tuple(u)
        if not b:
            yield tuple(g)
        data.append((a, b, m))
    k = len(pairs)
    tail_pool = [f.zero(), f.one()]
    for h in range(1, tail_height + 1):
        for coeffs in itertools.product(range(2), repeat=h + 1):
            if coeffs[-1]:
                tail_pool.append(f.poly_elem([base.from_int(c) for c in coeffs]))
    for s in range(k):
        a_s, b_s, m_s = data[s]
        if not a_s:
            continue
        u_s, g_s = pairs[s]
        others = [i for i in range(k) if i != s]
        count = 0
        for assign in itertools.product(tail_pool, repeat=2 * len(others)):
            count += 1
            if count > max_tails:
                break
            c = f.zero()
            vec = [f.zero()] * form.n
            for idx, oi in enumerate(others):
                x_v, y_v = assign[2 * idx], assign[2 * idx + 1]
                a_o, b_o, m_o = data[oi]
                c = c + a_o * x_v * x_v + m_o * x_v * y_v + b_o * y_v * y_v
                if x_v:
                    vec = [p + x_v * q for p, q in zip(vec, pairs[oi][0])]
                if y_v:
                    vec = [p + y_v * q for p, q in zip(vec, pairs[oi][1])]
            # a X^2 + m X + (b + c) = 0 with W = a X:  W^2 + m W = a(b + c)
            N = a_s * (b_s + c)
            if N.den.degree == 0 and m_s.den.degree == 0:
                w_roots = [
                    RatFuncElem(f, r, f.one().den, reduce=False)
                    for r in solve_additive_poly(base, m_s.num, N.num)
                ]
            else:
                from .fields import _artin_schreier_roots

                rhs = N / (m_s * m_s)
                w_roots = [u * m_s for u in _artin_schreier_roots(f, rhs)]
            for w_val in w_roots:
                x_val = w_val / a_s
                yield tuple(p + x_val * q1 + q2 for p, q1, q2 in zip(vec, u_s, g_s))


def _char2_artin_schreier_search(form, tail_height=1):
    """Verdict wrapper around the stream; complete for a single block."""
    from .forms import symplectic_pairs

    f = form.field
    try:
        k = len(symplectic_pairs(form))
    except AlgebraError:
        return None
    for wit in char2_isotropic_stream(form, tail_height):
        return isotropic_verdict(form, wit, "char2-artin-schreier")
    if k == 1:
        return anisotropic_verdict("char2-artin-schreier")
    return None


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------


def isotropy(form, height=DEFAULT_HEIGHT):
    """Field-dispatched isotropy verdict; Unknown encodes incompleteness."""
    f = form.field
    if form.n == 0:
        return anisotropic_verdict("empty")
    cls = form.classify()
    if cls.rad_basis:
        return isotropic_verdict(form, cls.rad_basis[0], "radical")
    if f.enumerable:
        return bounded_search(form, 1)
    if isinstance(f, RationalField):
        return hasse_minkowski(form, height)
    if isinstance(f, QuadraticFieldExtension) and isinstance(f.base, RationalField):
        if form.n == 1:
            return anisotropic_verdict("dim1")
        if form.n == 2:
            basis = orthogonalize(form)
            d0, d1 = form.evaluate(basis[0]), form.evaluate(basis[1])
            ratio = -d1 / d0
            if f.is_square(ratio):
                r = f.sqrt(ratio)
                vec = tuple(r * a + b for a, b in zip(basis[0], basis[1]))
                return isotropic_verdict(form, vec, "square-test")
            return anisotropic_verdict("square-test")
        if definiteness_certificate(form):
            return anisotropic_verdict("definiteness")
        return bounded_search(form, height)
    if isinstance(f, RationalFunctionField):
        const = _constant_reduction(form)
        if const is not None:
            return const
        try:
            return springer_reduce(form, height)
        except NotApplicable:
            pass
        if f.char == 2 and f.base.enumerable:
            if form.n == 2:
                verdict = _char2_artin_schreier_search(form)
                if verdict is not None:
                    return verdict
            # cheap low-degree scans, then the Artin-Schreier sweep
            scan_heights = (1, 2) if f.base.order ** (2 * form.n) <= 300000 else (1,)
            for h in scan_heights:
                for vec in projective_points(f, form.n, h):
                    if f.is_zero(form.evaluate(vec)):
                        return isotropic_verdict(form, vec, "search", h)
            verdict = _char2_artin_schreier_search(form)
            if verdict is not None:
                return verdict
            return unknown_verdict(2)
        if form.n >= 5 and _is_c2_function_field(f):
            # isotropy is guaranteed (C2 field); keep the fallback scan short
            for h in (1, 2):
                for vec in projective_points(f, form.n, h):
                    if f.is_zero(form.evaluate(vec)):
                        return isotropic_verdict(form, vec, "tsen-lang", h)
            return unknown_verdict(2)
        return bounded_search(form, height)
    if isinstance(f, QuadraticFieldExtension):
        if form.n == 1:
            return anisotropic_verdict("dim1")
        if form.n >= 5 and _is_c2_function_field(f):
            for h in range(1, max(height, 5) + 1):
                for vec in projective_points(f, form.n, h):
                    if f.is_zero(form.evaluate(vec)):
                        return isotropic_verdict(form, vec, "tsen-lang", h)
            return unknown_verdict(height)
        return bounded_search(form, height)
    return bounded_search(form, height)


# ---------------------------------------------------------------------------
# Witt decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WittDecomposition:
    radical_dim: int
    hyperbolic_count: int
    kernel: QuadraticForm
    basis: tuple  # rad vectors, then (u_i, v_i) pairs flattened, then kernel
    pairs: tuple
    kernel_basis: tuple
    radical_basis: tuple

    @property
    def witt_index(self):
        return self.radical_dim + self.hyperbolic_count


def _combine(ambient_vectors, coeffs, field):
    n = len(ambient_vectors[0]) if ambient_vectors else 0
    out = [field.zero()] * n
    for c, vec in zip(coeffs, ambient_vectors):
        if not field.is_zero(c):
            out = [a + c * b for a, b in zip(out, vec)]
    return tuple(out)


def witt_decompose(form, height=DEFAULT_HEIGHT):
    """phi = rad  _|_  m x hyperbolic  _|_  anisotropic kernel, verified.

    Raises OracleIncomplete when the field's oracle cannot decide a step.
    """
    f = form.field
    n = form.n
    cls = form.classify()
    rad = list(cls.rad_basis)
    if rad:
        rad_rows = [tuple(v) for v in rad]
        work = linalg.extend_to_basis(rad_rows, f, n)
    else:
        work = [tuple(f.one() if i == j else f.zero() for j in range(n)) for i in range(n)]
    pairs = []
    while work:
        sub = form.restrict(work)
        verdict = isotropy(sub, height=height)
        if verdict.status == UNKNOWN:
            raise OracleIncomplete("isotropy undecided during Witt decomposition")
        if verdict.is_anisotropic:
            break
        u_local = verdict.witness
        w_local = solve_polar_equal_one(sub, u_local)
        if w_local is None:
            raise InternalContradiction("isotropic vector with no dual in a regular form")
        cw = sub.evaluate(w_local)
        v_local = tuple(a - cw * b for a, b in zip(w_local, u_local))
        u = _combine(work, u_local, f)
        v = _combine(work, v_local, f)
        pairs.append((u, v))
        rows = [
            tuple(_polar_row(sub, u_local)),
            tuple(_polar_row(sub, v_local)),
        ]
        kern = linalg.kernel_basis(rows, f, len(work))
        work = [_combine(work, k, f) for k in kern]
    kernel_form = form.restrict(work)
    basis = list(rad)
    for u, v in pairs:
        basis.append(u)
        basis.append(v)
    basis.extend(work)
    _verify_witt(form, rad, pairs, work, kernel_form)
    return WittDecomposition(
        radical_dim=len(rad),
        hyperbolic_count=len(pairs),
        kernel=kernel_form,
        basis=tuple(basis),
        pairs=tuple(pairs),
        kernel_basis=tuple(work),
        radical_basis=tuple(rad),
    )


def _polar_row(form, v):
    f = form.field
    B = form.polar_matrix()
    out = []
    for j in range(form.n):
        acc = f.zero()
        for i in range(form.n):
            acc = acc + v[i] * B[i][j]
        out.append(acc)
    return out


def _verify_witt(form, rad, pairs, kernel_basis, kernel_form):
    f = form.field
    total = list(rad) + [v for p in pairs for v in p] + list(kernel_basis)
    if len(total) != form.n:
        raise InternalContradiction("Witt basis has wrong size")
    tf = form.restrict(total)
    r = len(rad)
    m = len(pairs)
    for i in range(form.n):
        for j in range(i, form.n):
            val = tf.upper[i][j]
            expected = None
            if i < r or (j < r):
                expected = f.zero()
            elif i < r + 2 * m and j < r + 2 * m:
                bi, bj = i - r, j - r
                if bi // 2 == bj // 2:
                    expected = f.one() if (bi % 2 == 0 and bj == bi + 1) else f.zero()
                else:
                    expected = f.zero()
            elif i < r + 2 * m:
                expected = f.zero()
            else:
                expected = kernel_form.upper[i - r - 2 * m][j - r - 2 * m]
            if val != expected:
                raise InternalContradiction("Witt change of basis failed verification")


def witt_index(form, height=DEFAULT_HEIGHT):
    return witt_decompose(form, height=height).witt_index
