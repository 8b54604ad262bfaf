"""Exact base fields: Q, GF(p^k), rational function fields, quadratic extensions.

Every element operation is exact; there is no floating point anywhere.
Elements are immutable and carry their field context where the context is
not implied by the Python type (Fraction is used raw for Q).  Mixing
elements of different contexts raises AlgebraError.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, isqrt

from .errors import AlgebraError


def _is_int_square(n):
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


class Field:
    """Abstract exact field.

    Subclasses provide element construction, square roots, quadratic root
    finding and (for enumerable fields) canonical element enumeration.
    """

    char = 0
    order = None  # number of elements, None when infinite
    name = "?"

    @property
    def enumerable(self):
        return self.order is not None

    @property
    def is_perfect(self):
        # only meaningful in characteristic p; finite fields are perfect
        return self.char == 0 or self.order is not None

    # -- element construction ------------------------------------------------
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def coerce(self, x):
        """Accept ints and own elements; reject foreign elements."""
        raise NotImplementedError

    def is_zero(self, x):
        return self.coerce(x) == self.zero()

    # -- roots ---------------------------------------------------------------
    def is_square(self, x):
        raise NotImplementedError

    def sqrt(self, x):
        """A square root of x; raises ValueError when x is not a square."""
        raise NotImplementedError

    def monic_quadratic_roots(self, b, c):
        """All roots in the field of X^2 + b X + c, deterministically ordered."""
        raise NotImplementedError

    # -- enumeration / sampling ----------------------------------------------
    def elements(self):
        raise AlgebraError("field %s is not enumerable" % self.name)

    def random_element(self, rng, size=5):
        raise NotImplementedError

    def format_element(self, x):
        return str(x)

    def __repr__(self):
        return self.name


class RationalField(Field):
    """The rational numbers; elements are fractions.Fraction."""

    char = 0
    name = "Q"

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, x):
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, Fraction):
            return x
        raise AlgebraError("cannot coerce %r into Q" % (x,))

    def is_square(self, x):
        x = self.coerce(x)
        return x >= 0 and _is_int_square(x.numerator) and _is_int_square(x.denominator)

    def sqrt(self, x):
        x = self.coerce(x)
        if not self.is_square(x):
            raise ValueError("%s is not a square in Q" % x)
        return Fraction(isqrt(x.numerator), isqrt(x.denominator))

    def monic_quadratic_roots(self, b, c):
        b, c = self.coerce(b), self.coerce(c)
        disc = b * b - 4 * c
        if not self.is_square(disc):
            return []
        r = self.sqrt(disc)
        roots = sorted({(-b + r) / 2, (-b - r) / 2})
        return roots

    def random_element(self, rng, size=5):
        num = rng.randint(-size, size)
        den = rng.randint(1, size)
        return Fraction(num, den)

    def sign(self, x):
        x = self.coerce(x)
        return (x > 0) - (x < 0)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


QQ = RationalField()


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

# x^k = r(x) reductions for the default moduli, little-endian r
_DEFAULT_REDUCTION = {
    (2, 2): (1, 1),        # x^2 = 1 + x        (x^2+x+1)
    (2, 3): (1, 1, 0),     # x^3 = 1 + x        (x^3+x+1)
    (2, 4): (1, 1, 0, 0),  # x^4 = 1 + x        (x^4+x+1)
    (3, 2): (2, 0),        # x^2 = -1           (x^2+1)
    (3, 3): (1, 1, 0),     # x^3 = 1 + x        (x^3-x-1 -> x^3 = x+1)
    (5, 2): (3, 0),        # x^2 = 3            (x^2-3, 3 a nonsquare mod 5)
    (7, 2): (6, 0),        # x^2 = -1           (x^2+1)
}


class GFElem:
    """Element of a finite field, stored as a coefficient tuple mod p."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, GFElem) and other.field == self.field:
            return other
        raise AlgebraError("mixed finite-field contexts: %r vs %r" % (self, other))

    def __add__(self, other):
        other = self._check(other)
        p = self.field.p
        return GFElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return GFElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return self.field._mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return self * self.field.inv(other)

    def __rtruediv__(self, other):
        return self._check(other) / self

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return isinstance(other, GFElem) and other.field == self.field and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return self.field.format_element(self)


class FiniteField(Field):
    """GF(p^k) as a polynomial quotient ring over GF(p)."""

    def __init__(self, p, k=1, reduction=None):
        if p < 2 or any(p % d == 0 for d in range(2, isqrt(p) + 1)):
            raise AlgebraError("p must be prime, got %s" % p)
        self.p = p
        self.k = k
        self.char = p
        self.order = p ** k
        if k == 1:
            self.reduction = ()
        else:
            if reduction is None:
                if (p, k) not in _DEFAULT_REDUCTION:
                    raise AlgebraError("no default modulus for GF(%d^%d)" % (p, k))
                reduction = _DEFAULT_REDUCTION[(p, k)]
            self.reduction = tuple(c % p for c in reduction)
            if len(self.reduction) != k:
                raise AlgebraError("reduction tuple must have length k")
        self.name = "F(%d)" % self.order
        # powers of x from x^k up to x^(2k-2), reduced
        self._xpowers = self._build_xpowers()
        self._validate_irreducible()

    def _build_xpowers(self):
        if self.k == 1:
            return []
        powers = [list(self.reduction)]
        for _ in range(self.k - 2):
            prev = powers[-1]
            nxt = [0] + prev[:-1]
            top = prev[-1]
            if top:
                for i, r in enumerate(self.reduction):
                    nxt[i] = (nxt[i] + top * r) % self.p
            powers.append(nxt)
        return powers

    def _validate_irreducible(self):
        # the modulus is irreducible iff no element of GF(p^k) \ GF(p^j) ...
        # cheap check for our sizes: the ring is a field iff every nonzero
        # element is invertible, which we verify on construction lazily
        # through a gcd-free criterion: x^(p^k) = x and x^(p^j) != x for j<k.
        if self.k == 1:
            return
        x = self.gen()
        y = x
        for _ in range(self.k - 1):
            y = self._pow_p(y)
            if y == x:
                raise AlgebraError("modulus for GF(%d^%d) is reducible" % (self.p, self.k))
        if self._pow_p(y) != x:
            raise AlgebraError("modulus for GF(%d^%d) is reducible" % (self.p, self.k))

    def _pow_p(self, a):
        out = self.one()
        base = a
        e = self.p
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def zero(self):
        return GFElem(self, (0,) * self.k)

    def one(self):
        return GFElem(self, (1,) + (0,) * (self.k - 1))

    def gen(self):
        if self.k == 1:
            return self.from_int(1)
        return GFElem(self, (0, 1) + (0,) * (self.k - 2))

    def from_int(self, n):
        return GFElem(self, (n % self.p,) + (0,) * (self.k - 1))

    def from_coeffs(self, coeffs):
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) < self.k:
            coeffs = coeffs + (0,) * (self.k - len(coeffs))
        if len(coeffs) != self.k:
            raise AlgebraError("coefficient tuple too long for %s" % self.name)
        return GFElem(self, coeffs)

    def coerce(self, x):
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, GFElem) and x.field == self:
            return x
        raise AlgebraError("cannot coerce %r into %s" % (x, self.name))

    def _mul(self, a, b):
        p, k = self.p, self.k
        if k == 1:
            return GFElem(self, ((a.coeffs[0] * b.coeffs[0]) % p,))
        conv = [0] * (2 * k - 1)
        for i, ai in enumerate(a.coeffs):
            if not ai:
                continue
            for j, bj in enumerate(b.coeffs):
                if bj:
                    conv[i + j] = (conv[i + j] + ai * bj) % p
        out = conv[:k]
        for d in range(k, 2 * k - 1):
            c = conv[d]
            if c:
                red = self._xpowers[d - k]
                for i in range(k):
                    out[i] = (out[i] + c * red[i]) % p
        return GFElem(self, tuple(out))

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in %s" % self.name)
        # a^(q-2)
        out = self.one()
        base = a
        e = self.order - 2
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def elements(self):
        for coeffs in itertools.product(range(self.p), repeat=self.k):
            yield GFElem(self, coeffs)

    def element_index(self, a):
        return sum(c * self.p ** i for i, c in enumerate(a.coeffs))

    def is_square(self, x):
        x = self.coerce(x)
        if not x:
            return True
        if self.p == 2:
            return True
        e = (self.order - 1) // 2
        out = self.one()
        base = x
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out == self.one()

    def sqrt(self, x):
        x = self.coerce(x)
        if self.p == 2:
            # squaring is bijective: sqrt = x^(q/2)
            out = x
            for _ in range(self.k - 1):
                out = out * out
            if not (out * out == x):
                raise ValueError("no square root of %r" % x)
            return out
        for a in self.elements():
            if a * a == x:
                return a
        raise ValueError("%r is not a square in %s" % (x, self.name))

    def monic_quadratic_roots(self, b, c):
        b, c = self.coerce(b), self.coerce(c)
        roots = [a for a in self.elements() if a * a + b * a + c == self.zero()]
        roots.sort(key=self.element_index)
        return roots

    def random_element(self, rng, size=5):
        return GFElem(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def format_element(self, x):
        if self.k == 1:
            return str(x.coeffs[0])
        parts = []
        for i, c in enumerate(x.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else "%d*" % c
                parts.append("%su%s" % (head, "" if i == 1 else "^%d" % i))
        return "+".join(parts) if parts else "0"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and other.p == self.p
            and other.k == self.k
            and other.reduction == self.reduction
        )

    def __hash__(self):
        return hash(("GF", self.p, self.k, self.reduction))


# ---------------------------------------------------------------------------
# polynomials and rational function fields
# ---------------------------------------------------------------------------


class Poly:
    """Dense univariate polynomial over a base field, little-endian coeffs."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base, coeffs):
        while coeffs and base.is_zero(coeffs[-1]):
            coeffs = coeffs[:-1]
        self.base = base
        self.coeffs = tuple(base.coerce(c) for c in coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1]

    def monic(self):
        if self.is_zero():
            return self
        lead = self.lead()
        if lead == self.base.one():
            return self
        return Poly(self.base, tuple(c / lead for c in self.coeffs))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.base, out)

    def __neg__(self):
        return Poly(self.base, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly(self.base, ())
            zero = self.base.zero()
            out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, ai in enumerate(self.coeffs):
                if self.base.is_zero(ai):
                    continue
                for j, bj in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + ai * bj
            return Poly(self.base, out)
        return Poly(self.base, tuple(c * other for c in self.coeffs))

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        base = self.base
        rem = list(self.coeffs)
        q = [base.zero()] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = base.one() / other.lead()
        for i in range(len(rem) - len(other.coeffs), -1, -1):
            c = rem[i + len(other.coeffs) - 1] * inv_lead
            if base.is_zero(c):
                continue
            q[i] = c
            for j, oc in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - c * oc
        return Poly(base, q), Poly(base, rem)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def evaluate(self, point):
        out = self.base.zero()
        for c in reversed(self.coeffs):
            out = out * point + c
        return out

    def sqrt(self):
        """Polynomial square root, or None."""
        base = self.base
        if self.is_zero():
            return Poly(base, ())
        if self.degree % 2:
            return None
        if base.char == 2:
            # only even-degree terms with square coefficients can occur
            half = []
            for i, c in enumerate(self.coeffs):
                if i % 2:
                    if not base.is_zero(c):
                        return None
                    continue
                if not base.is_square(c):
                    return None
                half.append(base.sqrt(c))
            cand = Poly(base, half)
        else:
            if not base.is_square(self.lead()):
                return None
            m = self.degree // 2
            top = base.sqrt(self.lead())
            cand_coeffs = [base.zero()] * m + [top]
            # match coefficients from the top down
            for i in range(m - 1, -1, -1):
                # coefficient of x^(m+i) in cand^2 must equal self's
                acc = base.zero()
                for j in range(i + 1, m):
                    k = m + i - j
                    if 0 <= k <= m:
                        acc = acc + cand_coeffs[j] * cand_coeffs[k]
                target = self.coeffs[m + i] if m + i <= self.degree else base.zero()
                cand_coeffs[i] = (target - acc) / (2 * top)
            cand = Poly(base, cand_coeffs)
        if (cand * cand).coeffs == self.coeffs:
            return cand
        return None

    def __eq__(self, other):
        return isinstance(other, Poly) and other.base == self.base and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.base, self.coeffs))

    def format(self, var):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if self.base.is_zero(c):
                continue
            cs = self.base.format_element(c) if not isinstance(c, Fraction) else str(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = var if i == 1 else "%s^%d" % (var, i)
                parts.append(xs if cs == "1" else "%s*%s" % (cs, xs))
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return self.format("x")


class RatFuncElem:
    """Reduced fraction of polynomials; denominator monic and nonzero."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, reduce=True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if num.is_zero():
                den = Poly(field.base, (field.base.one(),))
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num = num.divmod(g)[0]
                    den = den.divmod(g)[0]
                lead = den.lead()
                if lead != field.base.one():
                    num = Poly(field.base, tuple(c / lead for c in num.coeffs))
                    den = den.monic()
        self.field = field
        self.num = num
        self.den = den

    def _check(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, RatFuncElem) and other.field == self.field:
            return other
        raise AlgebraError("mixed function-field contexts")

    def is_polynomial(self):
        return self.den.degree == 0

    def __add__(self, other):
        other = self._check(other)
        if self.den.degree == 0 and other.den.degree == 0:
            return RatFuncElem(self.field, self.num + other.num, self.den, reduce=False)
        num = self.num * other.den + other.num * self.den
        return RatFuncElem(self.field, num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFuncElem(self.field, -self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if self.den.degree == 0 and other.den.degree == 0:
            return RatFuncElem(self.field, self.num * other.num, self.den, reduce=False)
        return RatFuncElem(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in %s" % self.field.name)
        return RatFuncElem(self.field, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._check(other) / self

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return (
            isinstance(other, RatFuncElem)
            and other.field == self.field
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return self.field.format_element(self)


class RationalFunctionField(Field):
    """Field of rational functions base(var) with exact arithmetic."""

    def __init__(self, base, var="t"):
        self.base = base
        self.var = var
        self.char = base.char
        self.order = None
        self.name = "%s(%s)" % (base.name, var)

    @property
    def is_perfect(self):
        return self.char == 0

    def _poly(self, coeffs):
        return Poly(self.base, tuple(coeffs))

    def poly_elem(self, coeffs):
        return RatFuncElem(self, self._poly(coeffs), self._poly((self.base.one(),)))

    def zero(self):
        return self.poly_elem(())

    def one(self):
        return self.poly_elem((self.base.one(),))

    def gen(self):
        return self.poly_elem((self.base.zero(), self.base.one()))

    def from_int(self, n):
        return self.poly_elem((self.base.from_int(n),))

    def from_base(self, c):
        return self.poly_elem((self.base.coerce(c),))

    def coerce(self, x):
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, RatFuncElem) and x.field == self:
            return x
        raise AlgebraError("cannot coerce %r into %s" % (x, self.name))

    def is_square(self, x):
        x = self.coerce(x)
        if not x:
            return True
        return self.sqrt_or_none(x) is not None

    def sqrt_or_none(self, x):
        ns = x.num.sqrt()
        if ns is None:
            return None
        ds = x.den.sqrt()
        if ds is None:
            return None
        return RatFuncElem(self, ns, ds)

    def sqrt(self, x):
        x = self.coerce(x)
        r = self.sqrt_or_none(x)
        if r is None:
            raise ValueError("%r is not a square in %s" % (x, self.name))
        return r

    def monic_quadratic_roots(self, b, c):
        b, c = self.coerce(b), self.coerce(c)
        if self.char != 2:
            disc = b * b - 4 * c
            r = self.sqrt_or_none(disc)
            if r is None:
                return []
            two = self.from_int(2)
            roots = [(-b + r) / two, (-b - r) / two]
        else:
            if not b:
                r = self.sqrt_or_none(c)
                return [r] if r is not None else []
            # X = bY reduces to the additive equation Y^2 + Y = c / b^2
            rhs = c / (b * b)
            ys = _artin_schreier_roots(self, rhs)
            roots = [b * y for y in ys]
        uniq = []
        for r in roots:
            if r not in uniq:
                uniq.append(r)
        uniq.sort(key=lambda e: (e.num.degree, e.den.degree, repr(e)))
        return uniq

    def random_element(self, rng, size=5):
        deg = rng.randint(0, 2)
        coeffs = [self.base.random_element(rng, size) for _ in range(deg + 1)]
        return self.poly_elem(coeffs)

    def format_element(self, x):
        n = x.num.format(self.var)
        if x.den.degree == 0:
            return n
        return "(%s)/(%s)" % (n, x.den.format(self.var))

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and other.base == self.base
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("ratfunc", self.base, self.var))


def _artin_schreier_roots(field, c):
    """Solutions y in base(t) of y^2 + y = c, characteristic 2.

    Any solution has denominator v with v^2 = den(c) up to the monic
    normalization; the numerator then solves the additive polynomial
    equation u^2 + v u = num(c), a GF(2)-linear system in the coefficients.
    A polynomial right-hand side admits only polynomial solutions, found by
    stripping square leading terms (linear time, used as the fast path).
    """
    base = field.base
    if not c:
        return [field.zero(), field.one()]
    v = c.den.sqrt()
    if v is None:
        return []
    if c.den.degree == 0:
        return _artin_schreier_poly_roots(field, c.num)
    f = c.num
    # degree bound for u
    m = max(f.degree, v.degree, 1) + 1
    two = FiniteField(2)
    # GF(2)-linear unknowns: coefficients of u over the GF(2)-basis of base
    k = getattr(base, "k", 1)
    ncols = (m + 1) * k
    target_len = max(f.degree, 2 * m, v.degree + m) + 1

    def apply_map(u_poly):
        val = u_poly * u_poly + v * u_poly
        return val

    def poly_to_bits(p):
        bits = []
        for i in range(target_len):
            cc = p.coeffs[i].coeffs if i <= p.degree else (0,) * k
            for j in range(k):
                bits.append(two.from_int(cc[j]))
        return bits

    # columns: image of each basis monomial b_j * x^i
    basis_elems = []
    if k == 1:
        gf_basis = [base.one()]
    else:
        gf_basis = []
        acc = base.one()
        g = base.gen()
        for _ in range(k):
            gf_basis.append(acc)
            acc = acc * g
    cols = []
    for i in range(m + 1):
        for bj in gf_basis:
            mono = Poly(base, (base.zero(),) * i + (bj,))
            basis_elems.append(mono)
            cols.append(poly_to_bits(apply_map(mono)))
    rhs = poly_to_bits(f)

    # solve the GF(2) system with plain elimination
    from . import linalg

    rows = [tuple(col[r] for col in cols) for r in range(target_len)]
    sol = linalg.solve(rows, rhs, two)
    if sol is None:
        return []
    u = Poly(base, ())
    for coeff, mono in zip(sol, basis_elems):
        if coeff == two.one():
            u = u + mono
    y = RatFuncElem(field, u, v)
    if not (y * y + y == c):
        return []
    return [y, y + field.one()]


def solve_additive_poly(base, m, N):
    """Polynomial solutions W of W^2 + m W = N over base[t], char 2.

    Degree descent on the top term with at most two branches when the two
    images 2w and w + deg m collide; returns all solutions (0, 1 or 2).
    """
    zero = Poly(base, ())
    if N.is_zero():
        return [zero, m]
    dm = m.degree
    sols = []
    stack = [(N, zero)]
    while stack:
        rem, w_acc = stack.pop()
        if rem.is_zero():
            if all((w_acc.coeffs != s.coeffs) for s in sols):
                sols.append(w_acc)
            continue
        dN = rem.degree
        lead = rem.coeffs[-1]
        branches = []
        if m.is_zero():
            if dN % 2 == 0 and base.is_square(lead):
                branches.append((dN // 2, base.sqrt(lead)))
        else:
            if dN % 2 == 0:
                w = dN // 2
                if w > dm and base.is_square(lead):
                    branches.append((w, base.sqrt(lead)))
            w = dN - dm
            if 0 <= w < dm:
                branches.append((w, lead / m.coeffs[-1]))
            if dN == 2 * dm:
                lm = m.coeffs[-1]
                for b in base.elements():
                    if b * b + lm * b == lead:
                        if not base.is_zero(b):
                            branches.append((dm, b))
        for w, b in branches:
            mono = Poly(base, (base.zero(),) * w + (b,))
            new_rem = rem + mono * mono + m * mono  # char 2
            if not new_rem.is_zero() and new_rem.degree >= dN:
                continue
            stack.append((new_rem, w_acc + mono))
    out = []
    for s in sols:
        if (s * s + m * s + N).is_zero():
            out.append(s)
            other = s + m
            if ((other * other + m * other + N)).is_zero() and all(
                other.coeffs != t.coeffs for t in out
            ):
                out.append(other)
    return out


def _artin_schreier_poly_roots(field, p):
    """Polynomial roots of y^2 + y = p for a polynomial p, characteristic 2.

    Repeatedly subtract (b x^d)^2 + b x^d with b = sqrt(lead); an odd
    intermediate degree proves unsolvability.
    """
    base = field.base
    u = Poly(base, ())
    while p.degree > 0:
        d = p.degree
        if d % 2:
            return []
        lead = p.coeffs[-1]
        if not base.is_square(lead):
            return []
        b = base.sqrt(lead)
        mono = Poly(base, (base.zero(),) * (d // 2) + (b,))
        u = u + mono
        p = p + mono * mono + mono  # char 2: subtraction = addition
    c0 = p.coeffs[0] if p.coeffs else base.zero()
    root0 = None
    for cand in base.elements():
        if cand * cand + cand == c0:
            root0 = cand
            break
    if root0 is None:
        return []
    y = RatFuncElem(field, u + Poly(base, (root0,)), Poly(base, (base.one(),)), reduce=False)
    return [y, y + field.one()]


# ---------------------------------------------------------------------------
# quadratic field extensions
# ---------------------------------------------------------------------------


class QuadExtElem:
    """Element a + b*w of a quadratic extension, w^2 = alpha*w + beta."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b):
        self.field = field
        self.a = a
        self.b = b

    def _check(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, QuadExtElem) and other.field == self.field:
            return other
        raise AlgebraError("mixed quadratic-extension contexts")

    def __add__(self, other):
        other = self._check(other)
        return QuadExtElem(self.field, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElem(self.field, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        f = self.field
        bb = self.b * other.b
        return QuadExtElem(
            f,
            self.a * other.a + f.beta * bb,
            self.a * other.b + self.b * other.a + f.alpha * bb,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return self * self.field.inv(other)

    def __rtruediv__(self, other):
        return self._check(other) / self

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return (
            isinstance(other, QuadExtElem)
            and other.field == self.field
            and other.a == self.a
            and other.b == self.b
        )

    def __hash__(self):
        return hash(("qe", self.a, self.b))

    def __bool__(self):
        base = self.field.base
        return not (base.is_zero(self.a) and base.is_zero(self.b))

    def __repr__(self):
        return self.field.format_element(self)


class QuadraticFieldExtension(Field):
    """base[w]/(w^2 - alpha*w - beta), required to be a field."""

    def __init__(self, base, alpha, beta, var="w"):
        self.base = base
        self.alpha = base.coerce(alpha)
        self.beta = base.coerce(beta)
        self.var = var
        self.char = base.char
        self.order = None if base.order is None else base.order ** 2
        self.name = "%s[%s]/(%s^2-%s*%s-%s)" % (
            base.name,
            var,
            var,
            base.format_element(self.alpha),
            var,
            base.format_element(self.beta),
        )
        if base.monic_quadratic_roots(-self.alpha, -self.beta):
            raise AlgebraError("x^2-%s*x-%s splits over %s: not a field" % (self.alpha, self.beta, base.name))

    @property
    def is_perfect(self):
        return self.char == 0 or self.order is not None

    def zero(self):
        return QuadExtElem(self, self.base.zero(), self.base.zero())

    def one(self):
        return QuadExtElem(self, self.base.one(), self.base.zero())

    def gen(self):
        return QuadExtElem(self, self.base.zero(), self.base.one())

    def from_int(self, n):
        return QuadExtElem(self, self.base.from_int(n), self.base.zero())

    def from_base(self, a):
        return QuadExtElem(self, self.base.coerce(a), self.base.zero())

    def from_pair(self, a, b):
        return QuadExtElem(self, self.base.coerce(a), self.base.coerce(b))

    def coerce(self, x):
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, QuadExtElem) and x.field == self:
            return x
        raise AlgebraError("cannot coerce %r into %s" % (x, self.name))

    def conj(self, x):
        """The nontrivial automorphism: w -> alpha - w."""
        x = self.coerce(x)
        return QuadExtElem(self, x.a + self.alpha * x.b, -x.b)

    def norm_to_base(self, x):
        x = self.coerce(x)
        return x.a * x.a + self.alpha * x.a * x.b - self.beta * x.b * x.b

    def trace_to_base(self, x):
        x = self.coerce(x)
        return 2 * x.a + self.alpha * x.b

    def inv(self, x):
        x = self.coerce(x)
        n = self.norm_to_base(x)
        if self.base.is_zero(n):
            raise ZeroDivisionError("inverse of zero in %s" % self.name)
        c = self.conj(x)
        return QuadExtElem(self, c.a / n, c.b / n)

    def elements(self):
        for a in self.base.elements():
            for b in self.base.elements():
                yield QuadExtElem(self, a, b)

    def element_index(self, x):
        return self.base.element_index(x.a) + self.base.order * self.base.element_index(x.b)

    def is_square(self, x):
        return len(self._sqrts(x)) > 0

    def sqrt(self, x):
        roots = self._sqrts(x)
        if not roots:
            raise ValueError("%r is not a square in %s" % (x, self.name))
        return roots[0]

    def _sqrts(self, x):
        x = self.coerce(x)
        base = self.base
        out = []
        if self.char == 2:
            # (s + t w)^2 = s^2 + beta t^2 + alpha t^2 w
            if base.is_zero(self.alpha):
                raise AlgebraError("inseparable quadratic extension")
            t2 = x.b / self.alpha
            if base.is_square(t2):
                t = base.sqrt(t2)
                s2 = x.a + self.beta * t2
                if base.is_square(s2):
                    out.append(QuadExtElem(self, base.sqrt(s2), t))
            return out
        if base.is_zero(x.b):
            if base.is_square(x.a):
                out.append(self.from_base(base.sqrt(x.a)))
        # t != 0 branch: with T = t^2,
        #   (alpha^2+4beta) T^2 - (2 alpha b + 4 a) T + b^2 = 0
        D = self.alpha * self.alpha + 4 * self.beta
        bq = -(2 * self.alpha * x.b + 4 * x.a) / D
        cq = x.b * x.b / D
        for T in base.monic_quadratic_roots(bq, cq):
            if base.is_zero(T) or not base.is_square(T):
                continue
            t = base.sqrt(T)
            s = (x.b - self.alpha * T) / (2 * t)
            cand = QuadExtElem(self, s, t)
            if cand * cand == x:
                out.append(cand)
        return out

    def monic_quadratic_roots(self, b, c):
        b, c = self.coerce(b), self.coerce(c)
        if self.order is not None:
            roots = [a for a in self.elements() if a * a + b * a + c == self.zero()]
            roots.sort(key=self.element_index)
            return roots
        if self.char != 2:
            disc = b * b - 4 * c
            roots = []
            for r in self._sqrts(disc):
                for cand in ((-b + r) / 2, (-b - r) / 2):
                    if cand not in roots:
                        roots.append(cand)
            return roots
        raise AlgebraError("quadratic roots unsupported over %s" % self.name)

    def random_element(self, rng, size=5):
        return QuadExtElem(self, self.base.random_element(rng, size), self.base.random_element(rng, size))

    # -- real embeddings (base Q, positive discriminant) ----------------------
    def real_embedding_signs(self, x):
        """Signs of x under the two real embeddings; needs base Q, disc > 0."""
        if not isinstance(self.base, RationalField):
            raise AlgebraError("real embeddings only over Q")
        D = self.alpha * self.alpha + 4 * self.beta
        if D <= 0:
            raise AlgebraError("no real embeddings: discriminant <= 0")
        x = self.coerce(x)
        # x = u + v*sqrt(D) with u = a + b*alpha/2, v = b/2
        u = x.a + x.b * self.alpha / 2
        v = x.b / 2
        out = []
        for sgn in (1, -1):
            vv = v * sgn
            if vv == 0:
                s = (u > 0) - (u < 0)
            elif u == 0:
                s = (vv > 0) - (vv < 0)
            elif u > 0 and vv > 0:
                s = 1
            elif u < 0 and vv < 0:
                s = -1
            else:
                s = (1 if u > 0 else -1) if u * u > D * vv * vv else (1 if vv > 0 else -1)
            out.append(s)
        return tuple(out)

    def format_element(self, x):
        base = self.base
        fa = base.format_element(x.a) if not isinstance(x.a, Fraction) else str(x.a)
        if base.is_zero(x.b):
            return fa
        fb = base.format_element(x.b) if not isinstance(x.b, Fraction) else str(x.b)
        bw = self.var if fb == "1" else "%s*%s" % (fb, self.var)
        if base.is_zero(x.a):
            return bw
        return ("%s+%s" % (fa, bw)).replace("+-", "-")

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticFieldExtension)
            and other.base == self.base
            and other.alpha == self.alpha
            and other.beta == self.beta
        )

    def __hash__(self):
        return hash(("quadext", self.base, self.alpha, self.beta))


def centered_ints(h):
    """0, 1, -1, 2, -2, ..., h, -h."""
    out = [0]
    for v in range(1, h + 1):
        out.append(v)
        out.append(-v)
    return out


def primitive_int_vectors(n, h):
    """Primitive integer vectors of sup-norm exactly h, echelon-ordered.

    Enumeration: first nonzero coordinate position ascending, leading value
    positive, remaining coordinates in centered (0, 1, -1, ...) order; only
    vectors new at height h are produced.
    """
    tail_pool = centered_ints(h)
    for k in range(n):
        for lead in range(1, h + 1):
            for tail in itertools.product(tail_pool, repeat=n - k - 1):
                vec = (0,) * k + (lead,) + tail
                if max(abs(c) for c in vec) != h:
                    continue
                g = 0
                for c in vec:
                    g = gcd(g, abs(c))
                if g != 1:
                    continue
                yield vec
