"""Decision procedures: which geometries share a given set of heat invariants.

Given the invariants (b0, b1, b2, b3) of a compact locally homogeneous
3-manifold, any partner with the same first four heat coefficients has the
same (b0, b1, b2) and, when both sides have non-degenerate Ricci, its P3
solves the mixing quadratic

    30 x^2 - b3 x + 6 P2^2 (P1^2 - 4 P2) = 0,

whose roots are the source P3 and the mixing value
C = P2^2 (P1^2 - 4 P2) / (5 P3).  Each root is turned into a candidate
eigenvalue triple by factoring x^3 + P1 x^2 + P2 x + P3', and every candidate
is confirmed or rejected with a machine-checkable reason.  The resulting
PartnerReport is an auditable trace of the decision.

Constant-curvature rigidity (a closed 3-manifold of constant curvature is
pinned by its first three heat coefficients) is consumed as an axiom, not
re-derived; axiom-backed steps are marked in the report.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import NotRealizableError, RegimeError, WitnessSearchError
from .invariants import (
    BInvariants,
    ElementarySymmetric,
    Regime,
    b_invariants,
    elementary_symmetric,
    heat_invariants,
    is_locally_symmetric_pattern,
    regime_for,
)
from .milnor import GroupTag, as_nu, group_from_ricci, ricci_from_lambda, sign_pattern
from .rational import coerce, encode_scalar, exact_sqrt, sign

# Sign patterns (sorted descending) realizable by unimodular 3D Lie groups.
REALIZABLE_PATTERNS = (
    (1, 1, 1),
    (1, -1, -1),
    (1, 0, 0),
    (0, 0, -1),
    (0, 0, 0),
)

_PATTERN_GLYPH = {1: "+", 0: "0", -1: "-"}


def _pattern_str(pattern) -> str:
    return "".join(_PATTERN_GLYPH[s] for s in pattern)


@dataclass(frozen=True)
class AdmissibilityResult:
    """Outcome of the realizability test for a Ricci eigenvalue triple."""

    admissible: bool
    pattern: str
    reason: str | None
    p3: object
    zeros: int

    def __bool__(self) -> bool:
        return self.admissible


def admissible_nu(nu) -> AdmissibilityResult:
    """Is nu realizable as the Ricci eigenvalues of some unimodular metric?

    True exactly when the sign pattern, up to order, is one of (+,+,+),
    (+,-,-), (+,0,0), (0,0,-), (0,0,0).  The result also carries P3 and the
    zero count, so the consequence "P3 >= 0, zero iff at least two
    eigenvalues vanish" can be checked by callers.
    """
    triple = as_nu(nu)
    pattern = sign_pattern(triple)
    p3 = triple[0] * triple[1] * triple[2]
    zeros = sum(1 for x in triple if x == 0)
    ok = pattern in REALIZABLE_PATTERNS
    reason = None
    if not ok:
        reason = f"sign pattern ({_pattern_str(pattern)}) is not realizable"
    return AdmissibilityResult(
        admissible=ok,
        pattern=_pattern_str(pattern),
        reason=reason,
        p3=p3,
        zeros=zeros,
    )


# ---------------------------------------------------------------------------
# Cubic machinery: from elementary symmetric values back to eigenvalues.


@dataclass(frozen=True)
class CubicSpec:
    """Coefficients of x^3 + p1 x^2 + p2 x + p3; its roots are the -nu_i."""

    p1: object
    p2: object
    p3: object

    @classmethod
    def from_nu(cls, nu) -> "CubicSpec":
        e = ElementarySymmetric.from_nu(nu)
        return cls(p1=e.p1, p2=e.p2, p3=e.p3)

    def discriminant(self):
        a, b, c = self.p1, self.p2, self.p3
        return (
            18 * a * b * c - 4 * a**3 * c + a * a * b * b - 4 * b**3 - 27 * c * c
        )

    def evaluate(self, x):
        return ((x + self.p1) * x + self.p2) * x + self.p3

    def derivative_at(self, x):
        return (3 * x + 2 * self.p1) * x + self.p2


@dataclass(frozen=True)
class NuRecovery:
    """Result of factoring a cubic into eigenvalues.

    nu is the recovered multiset (sorted descending) when the discriminant is
    non-negative, None otherwise; exact is True when all entries are
    Fractions.
    """

    nu: tuple | None
    discriminant: object
    exact: bool = False


_RESIDUAL_TOL = 1e-12


def _polish_root(spec: CubicSpec, x: float) -> float:
    for _ in range(3):
        d = spec.derivative_at(x)
        if d == 0:
            break
        step = spec.evaluate(x) / d
        x -= step
        if abs(step) <= 1e-18 * max(1.0, abs(x)):
            break
    return x


def _validate_root(spec: CubicSpec, x: float) -> float:
    scale = max(
        1.0,
        abs(x) ** 3,
        abs(float(spec.p1)) * x * x,
        abs(float(spec.p2) * x),
        abs(float(spec.p3)),
    )
    if abs(spec.evaluate(x)) > _RESIDUAL_TOL * scale:
        raise ArithmeticError(
            f"cubic root {x} failed back-substitution against {spec}"
        )
    return x


def _try_rationalize(spec: CubicSpec, x: float):
    if not all(isinstance(c, Fraction) for c in (spec.p1, spec.p2, spec.p3)):
        return None
    for bound in (1, 10, 100, 10**4, 10**6, 10**9, 10**12):
        cand = Fraction(x).limit_denominator(bound)
        if spec.evaluate(cand) == 0:
            return cand
    return None


def _quadratic_roots(b, c):
    """Real roots of x^2 + b x + c, exact where possible."""
    disc = b * b - 4 * c
    if disc < 0:
        return []
    if isinstance(disc, Fraction):
        r = exact_sqrt(disc)
        if r is not None:
            return [(-b - r) / 2, (-b + r) / 2]
    rf = math.sqrt(float(disc))
    return [(-float(b) - rf) / 2, (-float(b) + rf) / 2]


def _real_roots_all(spec: CubicSpec) -> list:
    """All three real roots (with multiplicity); call only when disc >= 0."""
    a, b, c = spec.p1, spec.p2, spec.p3
    disc = spec.discriminant()
    exact_coeffs = all(isinstance(v, Fraction) for v in (a, b, c))

    if disc == 0 and exact_coeffs:
        # Repeated roots are rational: gcd(f, f') is the repeated factor.
        # Remainder of f modulo f' is linear: f = f' (x/3 + a/9) + rem.
        lin1 = Fraction(2, 3) * b - Fraction(2, 9) * a * a
        lin0 = c - a * b / 9
        if lin1 == 0 and lin0 == 0:
            r = -a / 3
            return [r, r, r]
        if lin1 != 0:
            r = -lin0 / lin1
            if spec.evaluate(r) == 0 and spec.derivative_at(r) == 0:
                return sorted([r, r, -a - 2 * r])
        # fall through to the numeric path on the rare inexact-layout case

    # Trig solution of the depressed cubic t^3 + pt + q, t = x + a/3.
    af, bf, cf = float(a), float(b), float(c)
    p = bf - af * af / 3
    q = 2 * af**3 / 27 - af * bf / 3 + cf
    if p >= 0:
        # disc >= 0 forces p <= 0; p == 0 means a triple root.
        roots = [_polish_root(spec, -af / 3)] * 3
    else:
        m = 2 * math.sqrt(-p / 3)
        arg = max(-1.0, min(1.0, 3 * q / (p * m)))
        theta = math.acos(arg) / 3
        roots = sorted(
            _polish_root(spec, m * math.cos(theta - 2 * math.pi * k / 3) - af / 3)
            for k in range(3)
        )

    if exact_coeffs:
        for r in list(roots):
            cand = _try_rationalize(spec, r)
            if cand is not None:
                # Deflate exactly and solve the remaining quadratic.
                qb = a + cand
                qc = b + cand * qb
                rest = _quadratic_roots(qb, qc)
                if len(rest) == 2:
                    return sorted([cand, *rest], key=float)
    return [_validate_root(spec, r) for r in roots]


def nu_from_elementary(spec: CubicSpec) -> NuRecovery:
    """Recover the eigenvalue multiset from (P1, P2, P3), when real.

    The nu_i are minus the roots of x^3 + P1 x^2 + P2 x + P3.  A negative
    discriminant means only one real root, so no real eigenvalue triple
    exists and nu is absent.
    """
    disc = spec.discriminant()
    if disc < 0:
        return NuRecovery(nu=None, discriminant=disc)
    roots = _real_roots_all(spec)
    nu = tuple(sorted((-r for r in roots), reverse=True, key=float))
    exact = all(isinstance(x, Fraction) for x in nu)
    return NuRecovery(nu=nu, discriminant=disc, exact=exact)


# ---------------------------------------------------------------------------
# The sign certificate f <= 0 on the region S2.


def polysign_f(p) -> object:
    """f = P3^2 - P2^2 (P1^2 - 4 P2)/5, evaluated on elementary symmetrics.

    Accepts an ElementarySymmetric or an eigenvalue triple.  Nonpositive on
    the region of SU(2) eigenvalues with signature (+,-,-) and negative
    scalar curvature; equivalently P3 * (P3 - C) <= 0 there, which is what
    makes the mixing candidate C dominate P3.
    """
    if not isinstance(p, ElementarySymmetric):
        p = ElementarySymmetric.from_nu(p)
    return p.p3 * p.p3 - p.p2 * p.p2 * (p.p1 * p.p1 - 4 * p.p2) / 5


def polysign_chart_f(x, y):
    """f in the chart x = beta + gamma, y = beta*gamma with alpha = 1."""
    x, y = coerce(x), coerce(y)
    u = x + y
    return y * y - u * u * ((1 + x) ** 2 - 4 * u) / 5


def polysign_chart_dfdy(x, y):
    """Exact partial derivative of polysign_chart_f in y."""
    x, y = coerce(x), coerce(y)
    u = x + y
    return 2 * y - Fraction(2, 5) * u * ((1 + x) ** 2 - 6 * u)


@dataclass(frozen=True)
class RegionScanReport:
    """Grid certificate for f <= 0 and df/dy > 0 on the chart region."""

    step: Fraction
    points: int
    interior_points: int
    max_f: object
    argmax_f: tuple
    min_interior_dfdy: object
    argmin_dfdy: tuple | None
    ok: bool
    violations: tuple

    def as_dict(self) -> dict:
        return {
            "step": encode_scalar(self.step),
            "points": self.points,
            "interior_points": self.interior_points,
            "max_f": encode_scalar(self.max_f),
            "argmax_f": [encode_scalar(v) for v in self.argmax_f],
            "min_interior_dfdy": None
            if self.min_interior_dfdy is None
            else encode_scalar(self.min_interior_dfdy),
            "argmin_dfdy": None
            if self.argmin_dfdy is None
            else [encode_scalar(v) for v in self.argmin_dfdy],
            "ok": self.ok,
            "violations": [
                [encode_scalar(v) for v in point] for point in self.violations
            ],
        }


def _scan_columns(xs, step):
    """Scan the region columns for a list of x values; exact arithmetic."""
    max_f = None
    argmax = None
    min_dfdy = None
    argmin = None
    points = 0
    interior = 0
    violations = []
    for x in xs:
        ymax = x * x / 4
        interior_x = Fraction(-2) < x < Fraction(-1)
        j = 0
        while True:
            y = j * step
            if y >= ymax:
                y = ymax
            fval = polysign_chart_f(x, y)
            points += 1
            if max_f is None or fval > max_f or (fval == max_f and (x, y) < argmax):
                max_f, argmax = fval, (x, y)
            if fval > 0:
                violations.append((x, y, fval))
            if interior_x and 0 < y < ymax:
                interior += 1
                d = polysign_chart_dfdy(x, y)
                if (
                    min_dfdy is None
                    or d < min_dfdy
                    or (d == min_dfdy and (x, y) < argmin)
                ):
                    min_dfdy, argmin = d, (x, y)
                if d <= 0:
                    violations.append((x, y, d))
            if y == ymax:
                break
            j += 1
    return max_f, argmax, min_dfdy, argmin, points, interior, violations


def polysign_region_check(step) -> RegionScanReport:
    """Scan the chart region {-2 <= x <= -1, 0 <= y <= x^2/4} on a rational grid.

    Asserts f <= 0 at every grid point (the exact upper boundary y = x^2/4 is
    always included) and df/dy > 0 at every interior grid point.  A violation
    would falsify this implementation, not the underlying inequality; any are
    returned in the report.
    """
    step = coerce(step)
    if not isinstance(step, Fraction):
        step = Fraction(step).limit_denominator(10**9)
    if not 0 < step <= Fraction(1, 2):
        raise RegimeError(f"step must lie in (0, 1/2], got {step}")

    xs = []
    i = 0
    while True:
        x = Fraction(-2) + i * step
        if x >= -1:
            xs.append(Fraction(-1))
            break
        xs.append(x)
        i += 1

    workers = max(1, int(os.environ.get("GEOMSPEC_THREADS", "1") or 1))
    if workers == 1 or len(xs) < 4:
        parts = [_scan_columns(xs, step)]
    else:
        chunks = [xs[i::workers] for i in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _scan_columns(c, step), chunks))

    max_f = None
    argmax = None
    min_dfdy = None
    argmin = None
    points = 0
    interior = 0
    violations = []
    for mf, am, md, an, pts, itr, vio in parts:
        points += pts
        interior += itr
        violations.extend(vio)
        if mf is not None and (
            max_f is None or mf > max_f or (mf == max_f and am < argmax)
        ):
            max_f, argmax = mf, am
        if md is not None and (
            min_dfdy is None or md < min_dfdy or (md == min_dfdy and an < argmin)
        ):
            min_dfdy, argmin = md, an
    violations.sort()

    ok = not violations
    return RegionScanReport(
        step=step,
        points=points,
        interior_points=interior,
        max_f=max_f,
        argmax_f=argmax,
        min_interior_dfdy=min_dfdy,
        argmin_dfdy=argmin,
        ok=ok,
        violations=tuple(violations),
    )


class SL2RWindow(NamedTuple):
    """Window and uniqueness tests for SL2R~ eigenvalue triples."""

    in_window: bool
    uniqueness_criterion: bool


def sl2r_region_check(nu) -> SL2RWindow:
    """For signature (+,-,-): the P2 >= 0 window and the uniqueness test.

    With nu sorted as nu1 > 0 > nu2 >= nu3, in_window is the bound
    nu1 <= -nu2 nu3 / (nu2 + nu3) (equivalent to P2(nu) >= 0 on SL2R~
    metrics), and uniqueness_criterion is P1^2 - 4 P2 < 0, which forces the
    mixing candidate below zero and hence a unique class.
    """
    triple = sorted(as_nu(nu), reverse=True)
    if not (triple[0] > 0 > triple[1] >= triple[2]):
        raise RegimeError(f"{tuple(triple)} does not have signature (+,-,-)")
    n1, n2, n3 = triple
    bound = -n2 * n3 / (n2 + n3)
    e = ElementarySymmetric.from_nu(triple)
    return SL2RWindow(
        in_window=bool(n1 <= bound),
        uniqueness_criterion=bool(e.p1 * e.p1 - 4 * e.p2 < 0),
    )


# ---------------------------------------------------------------------------
# Theorem-P3 candidates.


def _mixing_quadratic_roots(a_coeff, k_coeff):
    """Real roots of 30 x^2 - a x + k, exact where possible, ascending."""
    disc = a_coeff * a_coeff - 120 * k_coeff
    if disc < 0:
        return ()
    if isinstance(disc, Fraction):
        r = exact_sqrt(disc)
        if r is not None:
            lo, hi = (a_coeff - r) / 60, (a_coeff + r) / 60
            return (lo,) if lo == hi else (lo, hi)
    rf = math.sqrt(float(disc))
    lo, hi = (float(a_coeff) - rf) / 60, (float(a_coeff) + rf) / 60
    return (lo,) if lo == hi else (lo, hi)


def p3_candidates(b: BInvariants) -> tuple:
    """The possible P3 values of a non-degenerate partner, from b-invariants.

    These are the roots of 30 x^2 - b3 x + 6 b2^2 (b1^2 - 4 b2) = 0, i.e. the
    source P3 together with C = b2^2 (b1^2 - 4 b2) / (5 P3); a single value
    when the two coincide.  Ascending order.
    """
    if b.b3 is None:
        raise RegimeError("p3 candidates need b3 (source must have P3 != 0)")
    k_coeff = 6 * b.b2 * b.b2 * (b.b1 * b.b1 - 4 * b.b2)
    return _mixing_quadratic_roots(b.b3, k_coeff)


def p3_candidates_from_nu(nu, vol=1) -> tuple:
    return p3_candidates(b_invariants(nu, vol))


def mixing_value(nu):
    """C = P2^2 (P1^2 - 4 P2) / (5 P3), the non-trivial P3 candidate."""
    p1, p2, p3 = ElementarySymmetric.from_nu(nu).as_tuple()
    if p3 == 0:
        raise RegimeError("the mixing value needs P3 != 0")
    return p2 * p2 * (p1 * p1 - 4 * p2) / (5 * p3)


# ---------------------------------------------------------------------------
# Sol-geometry rigidity helpers.


def sol_structure_constants(a, b) -> tuple:
    """Structure constants (2a^2, -2b^2, 0) of a Sol left-invariant metric."""
    a, b = coerce(a), coerce(b)
    return (2 * a * a, -2 * b * b, 0)


def sol_milnor_multiset(a, b) -> tuple:
    return tuple(sorted(sol_structure_constants(a, b), reverse=True))


def sol_ricci(a, b) -> tuple:
    return ricci_from_lambda(sol_structure_constants(a, b))


def sol_matching_parameters(p1, p2) -> tuple:
    """All (a^2, b^2) with Sol invariants P1(nu) = p1 and P2(nu) = p2.

    Solves P1 = -2 (a^2+b^2)^2 and P2 = -4 (a^2+b^2)^2 (a^2-b^2)^2 exactly.
    Returns pairs (a_sq, b_sq); raises if the values are not of Sol type.
    """
    p1, p2 = coerce(p1), coerce(p2)
    if p1 >= 0 or p2 > 0:
        raise RegimeError("Sol invariants need P1 < 0 and P2 <= 0")
    s_sq = -p1 / 2
    s = exact_sqrt(s_sq) if isinstance(s_sq, Fraction) else None
    if s is None:
        s = math.sqrt(float(s_sq))
    d_sq = -p2 / (4 * s_sq)
    d = exact_sqrt(d_sq) if isinstance(d_sq, Fraction) else None
    if d is None:
        d = math.sqrt(float(d_sq))
    pairs = []
    for dd in {d, -d}:
        a_sq = (s + dd) / 2
        b_sq = (s - dd) / 2
        if a_sq > 0 and b_sq > 0:
            pairs.append((a_sq, b_sq))
    return tuple(sorted(pairs, key=lambda t: (float(t[0]), float(t[1]))))


# ---------------------------------------------------------------------------
# The partner classification report.

CONCLUSION_UNIQUE = "unique-local-isometry-class"
CONCLUSION_TWO_CLASSES = "two-classes"
CONCLUSION_SIGNATURE_ONLY = "signature-only"
CONCLUSION_MODEL_GEOMETRY_ONLY = "model-geometry-only"

REASON_INADMISSIBLE = "inadmissible-sign"
REASON_P3_NEGATIVE = "p3-negative"
REASON_NO_REAL_ROOTS = "no-real-roots"
REASON_REGION = "region-violation"
REASON_P3_ZERO = "p3-zero-with-p2-nonzero"
REASON_A3_MISMATCH = "a3-mismatch"
REASON_CC_RIGIDITY = "constant-curvature-rigidity"

BASIS_FORMULA = "formula"
BASIS_AXIOM = "axiom"
BASIS_SIGNATURE = "signature"


@dataclass(frozen=True)
class CandidateEntry:
    """One partner candidate: an eigenvalue class with its verdict."""

    nu: tuple | None
    p3: object
    geometry: str | None
    status: str  # "confirmed" | "rejected"
    reason: str | None
    basis: str
    is_source_class: bool = False

    def as_dict(self) -> dict:
        return {
            "nu": None if self.nu is None else [encode_scalar(v) for v in self.nu],
            "p3": None if self.p3 is None else encode_scalar(self.p3),
            "geometry": self.geometry,
            "status": self.status,
            "reason": self.reason,
            "basis": self.basis,
            "is_source_class": self.is_source_class,
        }


@dataclass(frozen=True)
class TraceStep:
    rule: str
    inputs: dict
    outcome: str

    def as_dict(self) -> dict:
        return {"rule": self.rule, "inputs": self.inputs, "outcome": self.outcome}


@dataclass
class PartnerReport:
    """Constructive trace of the partner-classification decision."""

    source: dict
    candidates: list = field(default_factory=list)
    conclusion: str = ""
    trace: list = field(default_factory=list)

    def confirmed(self) -> list:
        return [c for c in self.candidates if c.status == "confirmed"]

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "candidates": [c.as_dict() for c in self.candidates],
            "conclusion": self.conclusion,
            "trace": [t.as_dict() for t in self.trace],
        }


def _symmetric_tag(nu_sorted) -> str | None:
    """Tag for locally symmetric eigenvalue patterns, None otherwise."""
    a, b, c = nu_sorted
    if a == b == c:
        if a > 0:
            return "constant-curvature-positive"
        if a < 0:
            return "constant-curvature-negative"
        return "flat"
    if a == b != 0 and c == 0:
        return "S2xE"
    if a == 0 and b == c != 0:
        return "H2xE"
    return None


def _geometry_tag(nu_multiset) -> str | None:
    tag = _symmetric_tag(nu_multiset)
    if tag is not None:
        return tag
    try:
        return group_from_ricci(nu_multiset).value
    except Exception:
        return None


def _same_multiset(a, b) -> bool:
    if a is None or b is None:
        return False
    if all(isinstance(x, Fraction) for x in (*a, *b)):
        return tuple(a) == tuple(b)
    return all(
        math.isclose(float(x), float(y), rel_tol=1e-9, abs_tol=1e-12)
        for x, y in zip(a, b)
    )


def _a3_scaled(nu, regime) -> object:
    """5040 * a3 / vol as an exact symmetric function of the eigenvalues."""
    h = heat_invariants(nu, Fraction(1), regime)
    return 5040 * h.a3


def _check_candidate(x, source_nu_sorted, source_p, check_order):
    """Run the rejection checks for a P3 candidate value x; return an entry."""
    p1, p2 = source_p.p1, source_p.p2
    spec = CubicSpec(p1=p1, p2=p2, p3=x)

    if x == source_p.p3:
        # Same (P1, P2, P3) means the same multiset, no factoring needed.
        return CandidateEntry(
            nu=source_nu_sorted,
            p3=x,
            geometry=_geometry_tag(source_nu_sorted),
            status="confirmed",
            reason=None,
            basis=BASIS_FORMULA,
            is_source_class=True,
        )

    recovery = None
    for check in check_order:
        if check == REASON_P3_NEGATIVE and x < 0:
            return CandidateEntry(
                nu=None, p3=x, geometry=None, status="rejected",
                reason=REASON_P3_NEGATIVE, basis=BASIS_FORMULA,
            )
        if check == REASON_NO_REAL_ROOTS:
            recovery = nu_from_elementary(spec)
            if recovery.nu is None:
                return CandidateEntry(
                    nu=None, p3=x, geometry=None, status="rejected",
                    reason=REASON_NO_REAL_ROOTS, basis=BASIS_FORMULA,
                )
        if check == REASON_P3_ZERO and x == 0:
            return CandidateEntry(
                nu=None, p3=x, geometry=None, status="rejected",
                reason=REASON_P3_ZERO if p2 != 0 else "p3-zero-excluded",
                basis=BASIS_FORMULA,
            )
    if recovery is None:
        recovery = nu_from_elementary(spec)
        if recovery.nu is None:
            return CandidateEntry(
                nu=None, p3=x, geometry=None, status="rejected",
                reason=REASON_NO_REAL_ROOTS, basis=BASIS_FORMULA,
            )

    cand_nu = recovery.nu
    adm = admissible_nu(cand_nu) if recovery.exact else None
    if recovery.exact and not adm.admissible:
        return CandidateEntry(
            nu=cand_nu, p3=x, geometry=None, status="rejected",
            reason=REASON_INADMISSIBLE, basis=BASIS_FORMULA,
        )
    if not recovery.exact:
        pat = sign_pattern(cand_nu)
        if pat not in REALIZABLE_PATTERNS:
            return CandidateEntry(
                nu=cand_nu, p3=x, geometry=None, status="rejected",
                reason=REASON_INADMISSIBLE, basis=BASIS_FORMULA,
            )

    geometry = _geometry_tag(cand_nu)

    # Region certificate: an SU(2) source with signature (+,-,-) and negative
    # scalar curvature has f <= 0, so C >= P3; if the candidate lands in the
    # same region the roles reverse and force C = P3, contradicting C != P3.
    src_pattern = sign_pattern(source_nu_sorted)
    if (
        src_pattern == (1, -1, -1)
        and source_p.p1 < 0
        and _geometry_tag(source_nu_sorted) == GroupTag.SU2.value
        and geometry == GroupTag.SU2.value
        and sign_pattern(cand_nu) == (1, -1, -1)
    ):
        return CandidateEntry(
            nu=cand_nu, p3=x, geometry=geometry, status="rejected",
            reason=REASON_REGION, basis=BASIS_FORMULA,
        )

    return CandidateEntry(
        nu=cand_nu,
        p3=x,
        geometry=geometry,
        status="confirmed",
        reason=None,
        basis=BASIS_FORMULA,
        is_source_class=_same_multiset(cand_nu, source_nu_sorted),
    )


def classify_isospectral_partners(nu, vol, regime: Regime | None = None) -> PartnerReport:
    """Enumerate eigenvalue classes compatible with the source's invariants.

    The source is described by its Ricci eigenvalues and volume; the regime
    (defaulted via regime_for) selects which a3 expression applies.  The
    report lists every candidate with a confirmation or a machine-checkable
    rejection reason and summarizes:

    - unique-local-isometry-class: only the source class survives;
    - model-geometry-only: two classes survive but share one geometry;
    - two-classes: two classes with different geometries survive;
    - signature-only: a3 has no closed form (degenerate Ricci), so only
      b0..b2 were used.
    """
    triple = as_nu(nu)
    nu_sorted = tuple(sorted(triple, reverse=True))
    adm = admissible_nu(triple)
    symmetric = is_locally_symmetric_pattern(triple)
    if regime is None:
        regime = regime_for(triple)
    if not adm.admissible and not symmetric:
        raise NotRealizableError(
            f"source {triple} is neither realizable by a unimodular group "
            "nor a locally symmetric pattern"
        )

    p = elementary_symmetric(triple)
    b = b_invariants(triple, vol)
    source_tag = _geometry_tag(nu_sorted)

    report = PartnerReport(
        source={
            "nu": [encode_scalar(v) for v in nu_sorted],
            "vol": encode_scalar(vol),
            "regime": regime.value,
            "geometry": source_tag,
            "signature": adm.pattern,
            "b": b.as_dict(),
        }
    )
    report.trace.append(
        TraceStep(
            rule="admissibility",
            inputs={"nu": [encode_scalar(v) for v in nu_sorted]},
            outcome=f"pattern {adm.pattern}; "
            + ("realizable" if adm.admissible else "locally symmetric only"),
        )
    )

    if regime is Regime.A3_UNDEFINED:
        report.trace.append(
            TraceStep(
                rule="invariants",
                inputs={"b1": encode_scalar(b.b1), "b2": encode_scalar(b.b2)},
                outcome="a3 unavailable (degenerate Ricci); using b0..b2 only",
            )
        )
        if adm.pattern == "00-":
            for tag in (GroupTag.SOL, GroupTag.SL2R_TILDE):
                report.candidates.append(
                    CandidateEntry(
                        nu=nu_sorted, p3=p.p3, geometry=tag.value,
                        status="confirmed", reason=None, basis=BASIS_SIGNATURE,
                    )
                )
            report.trace.append(
                TraceStep(
                    rule="signature",
                    inputs={"pattern": adm.pattern},
                    outcome="signature (0,0,-) is carried by both Sol and SL2R~; "
                    "the eigenvalue product alone does not separate them",
                )
            )
        elif adm.pattern == "+00":
            report.candidates.append(
                CandidateEntry(
                    nu=(p.p1, Fraction(0), Fraction(0)), p3=Fraction(0),
                    geometry=GroupTag.SU2.value, status="confirmed",
                    reason=None, basis=BASIS_SIGNATURE,
                )
            )
            report.trace.append(
                TraceStep(
                    rule="signature",
                    inputs={"pattern": adm.pattern, "p1": encode_scalar(p.p1)},
                    outcome="signature (+,0,0) pins the eigenvalues to (P1,0,0) "
                    "on SU(2), but a continuum of non-isometric metrics shares "
                    "them",
                )
            )
        report.conclusion = CONCLUSION_SIGNATURE_ONLY
        return report

    a3_scaled = _a3_scaled(triple, regime)
    report.trace.append(
        TraceStep(
            rule="invariants",
            inputs={
                "p1": encode_scalar(p.p1),
                "p2": encode_scalar(p.p2),
                "p3": encode_scalar(p.p3),
            },
            outcome=f"5040*a3/vol = {encode_scalar(a3_scaled)}",
        )
    )

    # Locally symmetric candidates, matched through (P1, P2) and then a3.
    cc_consistent = p.p1 * p.p1 == 3 * p.p2
    prod_consistent = p.p1 != 0 and p.p1 * p.p1 == 4 * p.p2
    if cc_consistent:
        c = p.p1 / 3
        cand = (c, c, c)
        if _same_multiset(cand, nu_sorted):
            report.candidates.append(
                CandidateEntry(
                    nu=cand, p3=c**3, geometry=_symmetric_tag(cand),
                    status="confirmed", reason=None, basis=BASIS_AXIOM,
                    is_source_class=True,
                )
            )
            report.trace.append(
                TraceStep(
                    rule="ls-candidates",
                    inputs={"c": encode_scalar(c)},
                    outcome="constant-curvature class equals the source; "
                    "pinned by the first three invariants (rigidity axiom)",
                )
            )
        else:
            report.candidates.append(
                CandidateEntry(
                    nu=cand, p3=c**3, geometry=_symmetric_tag(cand),
                    status="rejected", reason=REASON_CC_RIGIDITY,
                    basis=BASIS_AXIOM,
                )
            )
            report.trace.append(
                TraceStep(
                    rule="ls-candidates",
                    inputs={"c": encode_scalar(c)},
                    outcome="source is not of constant curvature, so no "
                    "constant-curvature partner exists (rigidity axiom)",
                )
            )
    if prod_consistent:
        k = p.p1 / 2
        cand = tuple(sorted((k, k, Fraction(0)), reverse=True))
        if _same_multiset(cand, nu_sorted):
            report.candidates.append(
                CandidateEntry(
                    nu=cand, p3=Fraction(0), geometry=_symmetric_tag(cand),
                    status="confirmed", reason=None, basis=BASIS_AXIOM,
                    is_source_class=True,
                )
            )
        else:
            ls_a3_scaled = _a3_scaled(cand, Regime.LOCALLY_SYMMETRIC)
            if ls_a3_scaled == a3_scaled:
                report.candidates.append(
                    CandidateEntry(
                        nu=cand, p3=Fraction(0), geometry=_symmetric_tag(cand),
                        status="confirmed", reason=None, basis=BASIS_FORMULA,
                    )
                )
            else:
                report.candidates.append(
                    CandidateEntry(
                        nu=cand, p3=Fraction(0), geometry=_symmetric_tag(cand),
                        status="rejected", reason=REASON_A3_MISMATCH,
                        basis=BASIS_FORMULA,
                    )
                )
    if not cc_consistent and not prod_consistent:
        report.trace.append(
            TraceStep(
                rule="ls-candidates",
                inputs={"p1^2": encode_scalar(p.p1 * p.p1)},
                outcome="no locally symmetric pattern is compatible with "
                "(P1, P2)",
            )
        )

    # Unimodular candidates with P3 != 0 via the mixing quadratic.
    a_coeff = 23 * p.p1**3 - 72 * p.p1 * p.p2 - a3_scaled
    k_coeff = 6 * p.p2 * p.p2 * (p.p1 * p.p1 - 4 * p.p2)
    roots = _mixing_quadratic_roots(a_coeff, k_coeff)
    report.trace.append(
        TraceStep(
            rule="mixing-quadratic",
            inputs={
                "linear": encode_scalar(a_coeff),
                "constant": encode_scalar(k_coeff),
            },
            outcome=f"candidate P3 values: {[encode_scalar(r) for r in roots]}",
        )
    )

    src_pattern_product = symmetric and _symmetric_tag(nu_sorted) in ("S2xE", "H2xE")
    check_order = (
        (REASON_NO_REAL_ROOTS, REASON_P3_ZERO, REASON_P3_NEGATIVE)
        if src_pattern_product
        else (REASON_P3_NEGATIVE, REASON_P3_ZERO, REASON_NO_REAL_ROOTS)
    )

    for x in roots:
        entry = _check_candidate(x, nu_sorted, p, check_order)
        # Avoid duplicating the source class already recorded by the locally
        # symmetric branch.
        if entry.is_source_class and any(
            c.is_source_class and c.status == "confirmed" for c in report.candidates
        ):
            report.trace.append(
                TraceStep(
                    rule="candidate-check",
                    inputs={"p3": encode_scalar(x)},
                    outcome="reproduces the source class",
                )
            )
            continue
        if entry.status == "confirmed" and entry.nu is not None:
            _assert_soundness(entry, b)
        report.candidates.append(entry)
        report.trace.append(
            TraceStep(
                rule="candidate-check",
                inputs={"p3": encode_scalar(x)},
                outcome=entry.status
                + (f" ({entry.reason})" if entry.reason else f" as {entry.geometry}"),
            )
        )

    survivors = []
    for c in report.confirmed():
        if not any(_same_multiset(c.nu, s.nu) for s in survivors):
            survivors.append(c)
    if len(survivors) <= 1:
        report.conclusion = CONCLUSION_UNIQUE
    elif len(survivors) == 2 and survivors[0].geometry == survivors[1].geometry:
        report.conclusion = CONCLUSION_MODEL_GEOMETRY_ONLY
    else:
        report.conclusion = CONCLUSION_TWO_CLASSES
    report.trace.append(
        TraceStep(
            rule="conclusion",
            inputs={"surviving_classes": len(survivors)},
            outcome=report.conclusion,
        )
    )
    return report


def _assert_soundness(entry: CandidateEntry, b_source: BInvariants) -> None:
    """Every confirmed candidate must reproduce the source b1..b3."""
    cand_b = b_invariants(entry.nu, b_source.b0)
    pairs = [(cand_b.b1, b_source.b1), (cand_b.b2, b_source.b2)]
    if cand_b.b3 is not None and b_source.b3 is not None:
        pairs.append((cand_b.b3, b_source.b3))
    for got, want in pairs:
        if isinstance(got, Fraction) and isinstance(want, Fraction):
            if got != want:
                raise WitnessSearchError(
                    f"confirmed candidate {entry.nu} fails b-invariant match: "
                    f"{got} != {want}"
                )
        elif not math.isclose(float(got), float(want), rel_tol=1e-9, abs_tol=1e-12):
            raise WitnessSearchError(
                f"confirmed candidate {entry.nu} fails b-invariant match: "
                f"{got} != {want}"
            )
