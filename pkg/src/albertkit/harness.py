"""Instance generation, the equivalence harness and certificate checking.

For an instance (F, K, Q) the three conditions are evaluated with
machine-checkable witnesses: (i)/(ii) quadratic subalgebra generators,
(iii) an isotropic Albert vector with its nilpotent image.  Witnesses are
converted across conditions through the explicit constructions, negative
verdicts carry the anisotropy method, and every certificate can be
re-verified from scratch without trusting any method tag.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field as dc_field

from .corestriction import (
    TensorSquareAlgebra,
    albert_form,
    cor_is_division,
    f_matrix,
    generator_to_isotropic,
    isotropic_to_generator,
    m2_mul,
)
from .errors import (
    AlgebraError,
    BudgetExhausted,
    InvalidWitness,
    MalformedCertificate,
    OracleIncomplete,
    UnknownFamily,
)
from .isotropy import isotropy, witt_decompose
from .jsonio import (
    format_element,
    parse_element,
    parse_extension,
    parse_field,
    parse_vector,
    vector_to_json,
)
from .quaternion import (
    QuaternionAlgebra,
    find_disjoint_quadratic_subalgebra,
    norm_form,
    validate_disjoint_witness,
)
from .transfer import descend, transfer

SCHEMA = "albertkit/1"

FAMILIES = (
    "split-K-over-Q",
    "quad-K-over-Q",
    "split-K-over-Qt",
    "char2-finite",
    "char2-function-field",
)


@dataclass
class Instance:
    family: str
    seed: int
    f_spec: str
    k_spec: str
    q_alpha: object
    q_beta: object
    q_a: object
    height: int = 12

    def to_json(self):
        return {
            "schema": SCHEMA,
            "family": self.family,
            "seed": self.seed,
            "F": self.f_spec,
            "K": self.k_spec,
            "Q": {"alpha": self.q_alpha, "beta": self.q_beta, "a": self.q_a},
            "height": self.height,
        }

    @classmethod
    def from_json(cls, doc):
        try:
            q = doc["Q"]
            return cls(
                family=doc.get("family", "custom"),
                seed=doc.get("seed", 0),
                f_spec=doc["F"],
                k_spec=doc["K"],
                q_alpha=q["alpha"],
                q_beta=q["beta"],
                q_a=q["a"],
                height=doc.get("height", 12),
            )
        except KeyError as exc:
            raise MalformedCertificate("instance missing field %s" % exc)

    def build(self):
        F = parse_field(self.f_spec)
        ext = parse_extension(F, self.k_spec)
        domain = ext.ring
        alpha = parse_element(domain, self.q_alpha)
        beta = parse_element(domain, self.q_beta)
        a = parse_element(domain, self.q_a)
        Q = QuaternionAlgebra(domain, alpha, beta, a)
        return F, ext, Q


def _rng_for(family, seed):
    digest = hashlib.sha256(("%s:%d" % (family, seed)).encode()).hexdigest()
    return random.Random(int(digest[:16], 16))


def generate_instance(family, seed):
    """Deterministic desk-scale instance with oracle-friendly parameters."""
    if family not in FAMILIES:
        raise UnknownFamily("unknown family %r" % family)
    rng = _rng_for(family, seed)
    if family == "split-K-over-Q":
        pool = [1, -1, 2, -2, 3, -3, 5, -5, 7, -7, 10, -10]
        beta = [rng.choice(pool), rng.choice(pool)]
        a = [rng.choice(pool), rng.choice(pool)]
        return Instance(family, seed, "Q", "split", [0, 0], [str(beta[0]), str(beta[1])], [str(a[0]), str(a[1])])
    if family == "quad-K-over-Q":
        d = rng.choice([2, 3, 5, 6, 7, -1, -2, -3, -5])
        small = [0, 1, -1, 2, -2, 3, -3]
        while True:
            b0, b1 = rng.choice(small), rng.choice(small)
            if (b0, b1) != (0, 0):
                break
        while True:
            a0, a1 = rng.choice(small), rng.choice(small)
            if not (a0 == 0 and a1 == 0):
                break
        beta = "%d%+d*w" % (b0, b1) if b1 else str(b0)
        a = "%d%+d*w" % (a0, a1) if a1 else str(a0)
        # a must be invertible: nonzero in the field K is enough
        return Instance(family, seed, "Q", "x^2-(%d)" % d, "0", beta, a)
    if family == "split-K-over-Qt":
        csmall = [1, -1, 2, -2, 3, -3]
        def mono():
            c = rng.choice(csmall)
            e = rng.choice([0, 0, 1])
            return "%d*t" % c if e else str(c)
        return Instance(family, seed, "Q(t)", "split", [0, 0], [mono(), mono()], [mono(), mono()])
    if family == "char2-finite":
        kelts = ["1", "w", "1+w"]
        alpha = rng.choice(kelts)
        beta = rng.choice(["0"] + kelts)
        a = rng.choice(kelts)
        return Instance(family, seed, "F(2)", "x^2-x-1", alpha, beta, a, height=4)
    if family == "char2-function-field":
        units = ["1", "t", "t+1", "t^2+t+1"]
        anytf = ["0", "1", "t", "t+1"]
        split = rng.random() < 0.5
        if split:
            kspec = "split"
            alpha = [rng.choice(units), rng.choice(units)]
            beta = [rng.choice(anytf), rng.choice(anytf)]
            a = [rng.choice(units), rng.choice(units)]
        else:
            kspec = "x^2-x-%s" % rng.choice(["t", "t+1"])
            alpha = rng.choice(units)
            beta = rng.choice(anytf)
            a = rng.choice(units)
        return Instance(family, seed, "F(2)(t)", kspec, alpha, beta, a, height=5)
    raise UnknownFamily(family)


# ---------------------------------------------------------------------------
# equivalence report
# ---------------------------------------------------------------------------


@dataclass
class CondVerdict:
    status: str  # "yes" | "no" | "unknown"
    witness: object = None
    method: str = ""
    searched: int | None = None

    def to_json(self, encode_witness):
        doc = {"status": self.status, "method": self.method}
        if self.witness is not None:
            doc["witness"] = encode_witness(self.witness)
        if self.searched is not None:
            doc["searched"] = self.searched
        return doc


@dataclass
class EquivalenceReport:
    instance: Instance
    cond_i: CondVerdict
    cond_ii: CondVerdict
    cond_iii_not_division: CondVerdict
    consistent: bool
    derivations: list = dc_field(default_factory=list)
    albert_gram: list | None = None
    ctx: tuple | None = None  # (F, ext, Q), not serialized

    @property
    def has_unknown(self):
        return any(
            c.status == "unknown"
            for c in (self.cond_i, self.cond_ii, self.cond_iii_not_division)
        )

    def to_json(self):
        if self.ctx is not None:
            _, ext, Q = self.ctx
        else:
            _, ext, Q = self.instance.build()
        F = ext.base

        def enc_elem(x):
            return _encode_quat(ext, x)

        def enc_vec(v):
            return vector_to_json(F, v)

        return {
            "schema": SCHEMA,
            "instance": self.instance.to_json(),
            "cond_i": self.cond_i.to_json(enc_elem),
            "cond_ii": self.cond_ii.to_json(enc_elem),
            "cond_iii_not_division": self.cond_iii_not_division.to_json(enc_vec),
            "consistent": self.consistent,
            "derivations": list(self.derivations),
            "albert_gram": self.albert_gram,
        }


def _encode_quat(ext, x):
    return [format_element(ext.ring, c) for c in x.coords]


def _decode_quat(ext, Q, data):
    return Q.element(tuple(parse_element(ext.ring, c) for c in data))


def check_equivalence(inst, path="albert", height=None):
    """Evaluate conditions (i), (ii), (iii) with witnesses and consistency.

    The default route runs through the Albert form of the corestriction;
    `path="both"` adds the transfer/descent cross-check when the extension
    is a field and the oracles over K are strong enough.
    """
    F, ext, Q = inst.build()
    height = height or inst.height
    tensor = TensorSquareAlgebra(ext, Q)
    ad = albert_form(ext, Q, tensor)
    derivations = []
    gram = [[format_element(F, c) for c in row] for row in ad.form.upper]

    div = cor_is_division(ad, height=height)
    falsified = False
    if div.not_division is True:
        cond_iii = CondVerdict("yes", div.witness_coords, div.method)
        try:
            gen = isotropic_to_generator(ad, div.witness_coords, height=min(height, 6))
            cond_ii = CondVerdict("yes", gen.kappa_y, "albert-isotropic-to-generator")
            cond_i = CondVerdict("yes", gen.kappa_y, "from-(ii)")
            derivations.append("(iii)->(ii): kappa-shifted isotropic representative")
            back = generator_to_isotropic(ad, gen.kappa_y)
            if F.is_zero(ad.form.evaluate(back)):
                derivations.append("(ii)->(iii): round trip verified")
            else:
                falsified = True
        except BudgetExhausted as exc:
            cond_ii = CondVerdict("unknown", None, "generator-search-budget", exc.searched)
            cond_i = CondVerdict("unknown", None, "generator-search-budget", exc.searched)
    elif div.not_division is False:
        cond_iii = CondVerdict("no", None, div.method)
        try:
            x = find_disjoint_quadratic_subalgebra(
                Q, ext, etale_required=False, height=1, max_candidates=3000
            )
            # a (i) witness converts to an isotropic vector, contradicting
            # the proven anisotropy: the equivalence would be falsified
            generator_to_isotropic(ad, x)
            falsified = True
            cond_i = CondVerdict("yes", x, "direct-search")
            cond_ii = CondVerdict("unknown", None, "not-attempted")
        except BudgetExhausted as exc:
            method = "derived: (i)=>(iii) sound converter + albert %s" % div.method
            cond_i = CondVerdict("no", None, method, exc.searched)
            cond_ii = CondVerdict("no", None, method, exc.searched)
        except InvalidWitness:
            falsified = True
            cond_i = CondVerdict("unknown", None, "converter-failure")
            cond_ii = CondVerdict("unknown", None, "converter-failure")
    else:
        cond_iii = CondVerdict("unknown", None, div.method)
        try:
            x = find_disjoint_quadratic_subalgebra(
                Q, ext, etale_required=True, height=1, max_candidates=3000
            )
            cond_ii = CondVerdict("yes", x, "direct-search")
            cond_i = CondVerdict("yes", x, "from-(ii)")
            coords = generator_to_isotropic(ad, x)
            cond_iii = CondVerdict("yes", tuple(coords), "from-(ii)-converter")
            derivations.append("(ii)->(iii): direct witness converted")
        except BudgetExhausted as exc:
            cond_i = CondVerdict("unknown", None, "search-budget", exc.searched)
            cond_ii = CondVerdict("unknown", None, "search-budget", exc.searched)

    if path in ("transfer", "both") and ext.kind == "field":
        _transfer_cross_check(inst, ext, Q, cond_iii, derivations, height)

    statuses = {cond_i.status, cond_ii.status, cond_iii.status}
    if "unknown" in statuses:
        consistent = not falsified
    else:
        consistent = not falsified and len(statuses) == 1
    return EquivalenceReport(
        instance=inst,
        cond_i=cond_i,
        cond_ii=cond_ii,
        cond_iii_not_division=cond_iii,
        consistent=consistent,
        derivations=derivations,
        albert_gram=gram,
        ctx=(F, ext, Q),
    )


def _transfer_cross_check(inst, ext, Q, cond_iii, derivations, height):
    """Optional route through the transfer of the norm form."""
    from .clifford import even_clifford_binary
    from .quaternion import embed_quadratic_algebra

    try:
        nq = norm_form(Q)
        T = transfer(ext, nq)
        i0 = witt_decompose(T, height=height).witt_index
        agrees = (i0 >= 2) == (cond_iii.status == "yes")
        derivations.append(
            "transfer path: i0(s_* n_Q) = %d, %s (iii)" % (i0, "agrees with" if agrees else "CONTRADICTS")
        )
        if not agrees:
            raise AlgebraError("transfer cross-check contradicts the Albert route")
        if i0 >= 2 and cond_iii.status == "yes":
            res = descend(ext, nq, height=height)
            psi1 = _nonsingular_pair_block(res.psi)
            p, q = even_clifford_binary(psi1)
            K = ext.ring
            x = embed_quadratic_algebra(Q, K.from_base(p), K.from_base(q), height=height)
            validate_disjoint_witness(Q, ext, x, etale_required=False)
            derivations.append("transfer path: embedded the even Clifford algebra of a 2-dim descent block")
    except (BudgetExhausted, OracleIncomplete) as exc:
        derivations.append("transfer path skipped: %s" % exc)


def _nonsingular_pair_block(psi):
    """A nonsingular 2-dimensional coordinate subform of a block form."""
    F = psi.field
    for i in range(psi.n):
        for j in range(i + 1, psi.n):
            vi = tuple(F.one() if k == i else F.zero() for k in range(psi.n))
            vj = tuple(F.one() if k == j else F.zero() for k in range(psi.n))
            block = psi.restrict([vi, vj])
            if block.classify().nonsingular:
                return block
    raise AlgebraError("no nonsingular pair block found")


# ---------------------------------------------------------------------------
# certificate verification
# ---------------------------------------------------------------------------


def verify_certificate(doc):
    """Re-verify every witness in a report from scratch.

    Positive witnesses are re-evaluated (isotropy of Albert vectors,
    subalgebra conditions, nilpotency of the f image); negative verdicts
    re-run the recorded decision method.  Returns False on any failure.
    """
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise MalformedCertificate("not an %s report" % SCHEMA)
    for key in ("instance", "cond_i", "cond_ii", "cond_iii_not_division"):
        if key not in doc:
            raise MalformedCertificate("missing %s" % key)
    inst = Instance.from_json(doc["instance"])
    try:
        F, ext, Q = inst.build()
        tensor = TensorSquareAlgebra(ext, Q)
        ad = albert_form(ext, Q, tensor)
    except AlgebraError:
        raise MalformedCertificate("instance does not build")

    try:
        ciii = doc["cond_iii_not_division"]
        if ciii["status"] == "yes":
            coords = parse_vector(F, ciii["witness"])
            if all(F.is_zero(c) for c in coords):
                return False
            if not F.is_zero(ad.form.evaluate(coords)):
                return False
            xi = ad.xi_from_coords(coords)
            M = f_matrix(ad, xi)
            if M[0][1].is_zero() and M[1][0].is_zero():
                return False
            sq = m2_mul(tensor, M, M)
            if not all(sq[i][j].is_zero() for i in range(2) for j in range(2)):
                return False
        elif ciii["status"] == "no":
            verdict = isotropy(ad.form, height=inst.height)
            if not verdict.is_anisotropic or verdict.method != ciii.get("method"):
                return False
        for key, etale in (("cond_ii", True), ("cond_i", False)):
            cond = doc[key]
            if cond["status"] == "yes":
                x = _decode_quat(ext, Q, cond["witness"])
                validate_disjoint_witness(Q, ext, x, etale_required=etale)
            elif cond["status"] == "no":
                # negatives on (i)/(ii) are derived from the (iii) method
                if doc["cond_iii_not_division"]["status"] != "no":
                    return False
    except (InvalidWitness, AlgebraError):
        return False
    except KeyError:
        raise MalformedCertificate("verdict is missing its witness")
    return True


def run_batch(families_and_seeds, path="albert"):
    """Deterministic batch run; reports ordered as given."""
    reports = []
    for family, seed in families_and_seeds:
        inst = generate_instance(family, seed)
        reports.append(check_equivalence(inst, path=path))
    return reports


def report_to_text(report):
    lines = []
    lines.append("instance %s seed %d" % (report.instance.family, report.instance.seed))
    for name, cond in (
        ("(i)  quadratic subalgebra", report.cond_i),
        ("(ii) etale subalgebra    ", report.cond_ii),
        ("(iii) Cor not division   ", report.cond_iii_not_division),
    ):
        lines.append("  %s: %s  [%s]" % (name, cond.status, cond.method))
    lines.append("  consistent: %s" % report.consistent)
    return "\n".join(lines)


def report_json_bytes(report):
    return json.dumps(report.to_json(), sort_keys=True, separators=(",", ":")).encode()
