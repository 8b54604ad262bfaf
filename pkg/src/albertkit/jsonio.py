"""Parsing and serialization: field specs, elements, forms, instances.

Field grammar: "Q", "Q(t)", "F(5)", "F(4):w^2+w+1", "F(2)(t)".
Extension grammar: "split" or a monic quadratic in x, e.g. "x^2-x-1".
Elements are serialized as expression strings over the variables t (function
field generator), w (quadratic extension generator) and u (finite field
generator); split-algebra scalars are two-element lists.
"""

from __future__ import annotations

import re

from .errors import AlgebraError, MalformedCertificate
from .etale import EtaleQuadratic, SplitAlgebra
from .fields import (
    QQ,
    FiniteField,
    QuadraticFieldExtension,
    RationalField,
    RationalFunctionField,
)
from .forms import QuadraticForm

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|[()+\-*/^])")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise AlgebraError("bad token in %r at %d" % (text, pos))
        tok = m.group(1)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _ExprParser:
    def __init__(self, tokens, field, variables):
        self.tokens = tokens
        self.pos = 0
        self.field = field
        self.variables = variables

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        val = self.expr()
        if self.peek() is not None:
            raise AlgebraError("trailing tokens in expression")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def factor(self):
        neg = False
        while self.peek() == "-":
            self.take()
            neg = not neg
        val = self.atom()
        if self.peek() == "^":
            self.take()
            e = self.take()
            if not e or not e.isdigit():
                raise AlgebraError("exponent must be a nonnegative integer")
            out = self.field.one()
            for _ in range(int(e)):
                out = out * val
            val = out
        return -val if neg else val

    def atom(self):
        tok = self.take()
        if tok is None:
            raise AlgebraError("unexpected end of expression")
        if tok == "(":
            val = self.expr()
            if self.take() != ")":
                raise AlgebraError("missing closing parenthesis")
            return val
        if tok.isdigit():
            return self.field.from_int(int(tok))
        if tok in self.variables:
            return self.variables[tok]
        raise AlgebraError("unknown symbol %r" % tok)


def _field_variables(field):
    vars = {}
    if isinstance(field, RationalFunctionField):
        vars["t" if field.var == "t" else field.var] = field.gen()
        inner = _field_variables(field.base)
        for k, v in inner.items():
            vars[k] = field.from_base(v)
    elif isinstance(field, QuadraticFieldExtension):
        vars[field.var] = field.gen()
        inner = _field_variables(field.base)
        for k, v in inner.items():
            vars[k] = field.from_base(v)
    elif isinstance(field, FiniteField) and field.k > 1:
        vars["u"] = field.gen()
    return vars


def parse_element(field, data):
    """Element of a field (or split algebra) from its JSON form."""
    if isinstance(field, SplitAlgebra):
        if isinstance(data, (list, tuple)) and len(data) == 2:
            return field.pair(parse_element(field.base, data[0]), parse_element(field.base, data[1]))
        # a plain value means the diagonal embedding
        return field.from_base(parse_element(field.base, data))
    if isinstance(data, int):
        return field.from_int(data)
    if isinstance(data, str):
        tokens = _tokenize(data)
        return _ExprParser(tokens, field, _field_variables(field)).parse()
    if isinstance(data, (list, tuple)):
        raise AlgebraError("list element literal not valid for %s" % field.name)
    raise AlgebraError("cannot parse %r as an element of %s" % (data, field.name))


def format_element(field, x):
    if isinstance(field, SplitAlgebra):
        return [format_element(field.base, x.a), format_element(field.base, x.b)]
    if isinstance(field, RationalField):
        return str(x)
    return field.format_element(x)


# ---------------------------------------------------------------------------
# field specs
# ---------------------------------------------------------------------------


def field_to_spec(field):
    if isinstance(field, RationalField):
        return "Q"
    if isinstance(field, FiniteField):
        if field.k == 1:
            return "F(%d)" % field.p
        # modulus: w^k - reduction
        mono = ["w^%d" % field.k if field.k != 1 else "w"]
        parts = []
        for i in range(field.k - 1, -1, -1):
            c = field.reduction[i]
            if c == 0:
                continue
            cneg = (-c) % field.p
            term = str(cneg) if i == 0 else (
                ("w" if i == 1 else "w^%d" % i) if cneg == 1 else "%d*%s" % (cneg, "w" if i == 1 else "w^%d" % i)
            )
            parts.append("+" + term)
        return "F(%d):%s%s" % (field.order, mono[0], "".join(parts))
    if isinstance(field, RationalFunctionField):
        return "%s(%s)" % (field_to_spec(field.base), field.var)
    raise AlgebraError("no spec string for %s" % field.name)


_FQ = re.compile(r"^F\((\d+)\)$")


def parse_field(spec):
    """Base-field spec -> Field."""
    spec = spec.strip()
    if spec.endswith(")") and "(" in spec and spec.split("(")[-1].rstrip(")").isalpha():
        # function-field suffix like "...(t)"
        open_idx = spec.rfind("(")
        var = spec[open_idx + 1 : -1]
        inner = spec[:open_idx]
        if inner in ("Q", "") or inner.startswith("F"):
            if inner == "Q":
                return RationalFunctionField(QQ, var)
            base = parse_field(inner)
            return RationalFunctionField(base, var)
    if spec == "Q":
        return QQ
    m = _FQ.match(spec)
    if m:
        q = int(m.group(1))
        p, k = _prime_power(q)
        return FiniteField(p, k)
    if spec.startswith("F(") and ":" in spec:
        head, modulus = spec.split(":", 1)
        m = _FQ.match(head)
        if not m:
            raise AlgebraError("bad finite-field spec %r" % spec)
        q = int(m.group(1))
        p, k = _prime_power(q)
        reduction = _parse_monic_poly(FiniteField(p), modulus, "w", k)
        return FiniteField(p, k, reduction=tuple((-c.coeffs[0]) % p for c in reduction))
    raise AlgebraError("unknown field spec %r" % spec)


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1:
                raise AlgebraError("not a prime power")
            return p, k
    raise AlgebraError("not a prime power")


def _parse_monic_poly(base, text, var, degree):
    """Parse a monic degree-d polynomial in var; return the low coefficients."""
    ring = RationalFunctionField(base, var)
    val = parse_element(ring, text)
    if val.den.degree != 0:
        raise AlgebraError("modulus must be a polynomial")
    poly = val.num
    if poly.degree != degree:
        raise AlgebraError("modulus must have degree %d" % degree)
    if poly.coeffs[-1] != base.one():
        raise AlgebraError("modulus must be monic")
    return list(poly.coeffs[:-1])


def parse_extension(base, spec):
    """Extension spec 'split' or a monic quadratic in x -> EtaleQuadratic."""
    if spec == "split":
        return EtaleQuadratic(base, "split")
    coeffs = _parse_monic_poly(base, spec, "x", 2)
    # x^2 + c1 x + c0 = x^2 - alpha x - beta
    return EtaleQuadratic(base, (-coeffs[1], -coeffs[0]))


def extension_to_spec(ext):
    if ext.kind == "split":
        return "split"
    base = ext.base
    out = "x^2"
    if not base.is_zero(ext.alpha):
        out += "-(%s)*x" % format_element(base, ext.alpha)
    if not base.is_zero(ext.beta):
        out += "-(%s)" % format_element(base, ext.beta)
    return out


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------


def parse_form(doc, field=None):
    """{"field": spec, "dim": n, "upper": [[...]]} or "diag": [...]."""
    if field is None:
        spec = doc.get("field")
        if spec is None:
            raise MalformedCertificate("form literal needs a field")
        field = parse_form_field(spec)
    if "diag" in doc:
        entries = [parse_element(field, e) for e in doc["diag"]]
        return QuadraticForm.diagonal(field, entries)
    n = doc.get("dim")
    upper = doc.get("upper")
    if upper is None:
        raise MalformedCertificate("form literal needs 'upper' or 'diag'")
    if n is not None and n != len(upper):
        raise MalformedCertificate("dim does not match the matrix size")
    rows = [[parse_element(field, e) for e in row] for row in upper]
    return QuadraticForm(field, rows)


def parse_form_field(spec):
    """Field of a form: base spec string or {"base":…, "ext":…}."""
    if isinstance(spec, str):
        return parse_field(spec)
    base = parse_field(spec["base"])
    ext = parse_extension(base, spec["ext"])
    if ext.kind != "field":
        raise AlgebraError("forms over the split algebra are not supported")
    return ext.ring


def form_field_spec(field):
    if isinstance(field, QuadraticFieldExtension):
        return {
            "base": field_to_spec(field.base),
            "ext": "x^2-(%s)*x-(%s)" % (
                format_element(field.base, field.alpha),
                format_element(field.base, field.beta),
            ),
        }
    return field_to_spec(field)


def form_to_json(form):
    return {
        "field": form_field_spec(form.field),
        "dim": form.n,
        "upper": [[format_element(form.field, c) for c in row] for row in form.upper],
    }


def vector_to_json(field, vec):
    return [format_element(field, c) for c in vec]


def parse_vector(field, data):
    return tuple(parse_element(field, c) for c in data)
