"""Laplace spectra of the four compact quotients of the round 2-sphere times a line.

For curvature k > 0 and translation length v > 0 the four families are

    1: S^2 x S^1            (deck group generated by the translation)
    2: the twisted S^1-bundle over RP^2
    3: RP^3 # RP^3          (two reflections composed with the antipode)
    4: RP^2 x S^1

All eigenvalues have the form F(m, n) = m(m+1) k + (pi^2 / v^2) n^2 with
nonnegative integers m, n subject to a per-family parity constraint:

    1: n even      2: m = n mod 2      3: all (m, n)      4: m and n even.

Enumeration below a cutoff is complete because F is monotone in m and in n.

Values are exact Fractions whenever the ratio pi^2/v^2 is rationally
specified (QuotientSpec.with_ratio); otherwise they are floats compared with
a relative interval of 1e-12, and witness searches additionally demand a
separation of 1e-9 before declaring two values distinct.

Eigenvalue multiplicities factor into sphere and circle multiplicities for
families 1 and 4 only (full spheres and projective planes crossed with
circles); families 2 and 3 are supported as eigenvalue sets without
multiplicities, and refuse heat-trace requests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    UnsupportedMultiplicityError,
    UsageError,
    WitnessSearchError,
)
from .rational import coerce, encode_scalar

FAMILY_NAMES = {
    1: "S2xS1",
    2: "twisted-S1-bundle-over-RP2",
    3: "RP3#RP3",
    4: "RP2xS1",
}

_MERGE_RTOL = 1e-12
_SEPARATION_RTOL = 1e-9


def _parity_ok(family: int, m: int, n: int) -> bool:
    if family == 1:
        return n % 2 == 0
    if family == 2:
        return (m - n) % 2 == 0
    if family == 3:
        return True
    return m % 2 == 0 and n % 2 == 0


@dataclass(frozen=True)
class QuotientSpec:
    """One quotient M_family(k, v); the circle ratio pi^2/v^2 may be exact.

    k is the sphere curvature (1/length^2), v the translation length.  When
    the spectrum is needed exactly, construct with with_ratio(), which fixes
    q = pi^2/v^2 as a Fraction (v is then pi/sqrt(q) and only kept as a
    float for volumes and display).
    """

    family: int
    k: object
    v: object
    ratio: object = None  # exact pi^2 / v^2, when rational

    def __post_init__(self):
        if self.family not in (1, 2, 3, 4):
            raise UsageError(f"family must be 1..4, got {self.family}")
        if not self.k > 0:
            raise UsageError(f"curvature k must be positive, got {self.k}")
        if not self.v > 0:
            raise UsageError(f"translation length v must be positive, got {self.v}")
        if self.ratio is not None and not self.ratio > 0:
            raise UsageError(f"ratio must be positive, got {self.ratio}")

    @classmethod
    def with_ratio(cls, family: int, k, ratio) -> "QuotientSpec":
        k = coerce(k)
        ratio = coerce(ratio)
        if not isinstance(ratio, Fraction) or ratio <= 0:
            raise UsageError("with_ratio needs a positive rational ratio")
        v = math.pi / math.sqrt(float(ratio))
        return cls(family=family, k=k, v=v, ratio=ratio)

    @property
    def exact(self) -> bool:
        return self.ratio is not None and isinstance(self.k, Fraction)

    def circle_step(self):
        """q = pi^2 / v^2, exact when available."""
        if self.ratio is not None:
            return self.ratio
        return math.pi**2 / float(self.v) ** 2

    def name(self) -> str:
        return FAMILY_NAMES[self.family]

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "name": self.name(),
            "k": encode_scalar(self.k),
            "v": float(self.v),
            "ratio": None if self.ratio is None else encode_scalar(self.ratio),
        }


def quotient_volume(spec: QuotientSpec) -> float:
    """4 pi v / k for families 1-3; the index-two quotient 2 pi v / k for 4."""
    base = 4 * math.pi * float(spec.v) / float(spec.k)
    return base / 2 if spec.family == 4 else base


def eigenvalue_F(m: int, n: int, k, v) -> float:
    """F(m, n) = m(m+1) k + (pi/v)^2 n^2 as a float."""
    return m * (m + 1) * float(k) + (math.pi / float(v)) ** 2 * n * n


def eigenvalue_F_exact(m: int, n: int, k, ratio) -> Fraction:
    """F(m, n) with an exact rational ratio q = pi^2/v^2."""
    return m * (m + 1) * coerce(k) + coerce(ratio) * n * n


@dataclass(frozen=True)
class EigenvalueEntry:
    """One distinct eigenvalue with its (m, n) contributors."""

    value: object
    pairs: tuple
    multiplicity: int | None

    def as_dict(self) -> dict:
        return {
            "value": encode_scalar(self.value),
            "pairs": [list(p) for p in self.pairs],
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class SpectrumPrefix:
    """All distinct eigenvalues of a quotient up to a cutoff, sorted."""

    spec: QuotientSpec
    cutoff: object
    entries: tuple

    def values(self) -> tuple:
        return tuple(e.value for e in self.entries)

    def as_dict(self) -> dict:
        return {
            "spec": self.spec.as_dict(),
            "cutoff": encode_scalar(self.cutoff),
            "values": [e.as_dict() for e in self.entries],
        }


def _enumerate_pairs(spec: QuotientSpec, cutoff):
    """All (m, n, F(m, n)) with F <= cutoff satisfying the parity constraint."""
    k = spec.k
    q = spec.circle_step()
    out = []
    m = 0
    while True:
        sphere = m * (m + 1) * k
        if sphere > cutoff:
            break
        n = 0
        while True:
            value = sphere + q * n * n
            if value > cutoff:
                break
            if _parity_ok(spec.family, m, n):
                out.append((m, n, value))
            n += 1
        m += 1
    return out


def _circle_mult(n: int) -> int:
    return 1 if n == 0 else 2


def eigenvalue_set(spec: QuotientSpec, cutoff) -> SpectrumPrefix:
    """Distinct eigenvalues <= cutoff; multiplicities for families 1 and 4.

    Exact grouping when the spec is exact; otherwise floats are merged when
    they agree to a relative 1e-12.
    """
    if cutoff < 0:
        raise UsageError("cutoff must be nonnegative")
    if spec.exact:
        cutoff = coerce(cutoff)
    pairs = _enumerate_pairs(spec, cutoff)
    pairs.sort(key=lambda t: (float(t[2]), t[0], t[1]))

    groups: list[list] = []
    for m, n, value in pairs:
        if groups and _values_equal(groups[-1][0][2], value, exact=spec.exact):
            groups[-1].append((m, n, value))
        else:
            groups.append([(m, n, value)])

    with_mult = spec.family in (1, 4)
    entries = []
    for group in groups:
        mult = None
        if with_mult:
            mult = sum((2 * m + 1) * _circle_mult(n) for m, n, _ in group)
        entries.append(
            EigenvalueEntry(
                value=group[0][2],
                pairs=tuple((m, n) for m, n, _ in group),
                multiplicity=mult,
            )
        )
    return SpectrumPrefix(spec=spec, cutoff=cutoff, entries=tuple(entries))


def _values_equal(a, b, exact: bool) -> bool:
    if exact:
        return a == b
    return math.isclose(float(a), float(b), rel_tol=_MERGE_RTOL, abs_tol=1e-300)


def spectrum_contains(spec: QuotientSpec, value, margin=1) -> bool:
    """Exact (or guarded-float) membership of a value in the eigenvalue set."""
    if value < 0:
        return False
    prefix = eigenvalue_set(spec, value + margin)
    for entry in prefix.entries:
        if _values_equal(entry.value, value, exact=spec.exact and not isinstance(value, float)):
            return True
    return False


def fundamental_tone(spec: QuotientSpec):
    """Smallest positive eigenvalue, raising the cutoff until one appears."""
    cutoff = max(float(6 * spec.k), 4 * float(spec.circle_step()), 1.0)
    while True:
        for entry in eigenvalue_set(spec, cutoff).entries:
            if entry.value > 0:
                return entry.value
        cutoff *= 2


# ---------------------------------------------------------------------------
# Distinctness of the equal-volume family.


@dataclass(frozen=True)
class PairWitness:
    """A value lying in exactly one of two eigenvalue sets."""

    families: tuple
    witness: object
    member_of: int
    pair: tuple
    cutoff_used: object

    def as_dict(self) -> dict:
        return {
            "families": list(self.families),
            "witness": encode_scalar(self.witness),
            "member_of": self.member_of,
            "pair": list(self.pair),
            "cutoff_used": encode_scalar(self.cutoff_used),
        }


@dataclass(frozen=True)
class DistinctnessReport:
    """Pairwise witnesses for the four equal-volume quotients.

    The equal-volume family at (k, v) is M1(k,v), M2(k,v), M3(k,v) and
    M4(k,2v); the report finds, for each of the six pairs, the smallest
    eigenvalue lying in exactly one of the two sets.
    """

    k: object
    v: object
    ratio: object
    witnesses: tuple
    ok: bool

    def as_dict(self) -> dict:
        return {
            "k": encode_scalar(self.k),
            "v": float(self.v),
            "ratio": None if self.ratio is None else encode_scalar(self.ratio),
            "witnesses": [w.as_dict() for w in self.witnesses],
            "ok": self.ok,
        }


def equal_volume_family(k, v=None, ratio=None) -> tuple:
    """The four specs M1(k,v), M2(k,v), M3(k,v), M4(k,2v)."""
    if (v is None) == (ratio is None):
        raise UsageError("specify exactly one of v and ratio")
    if ratio is not None:
        ratio = coerce(ratio)
        return (
            QuotientSpec.with_ratio(1, k, ratio),
            QuotientSpec.with_ratio(2, k, ratio),
            QuotientSpec.with_ratio(3, k, ratio),
            QuotientSpec.with_ratio(4, k, ratio / 4),
        )
    return (
        QuotientSpec(1, coerce(k), v),
        QuotientSpec(2, coerce(k), v),
        QuotientSpec(3, coerce(k), v),
        QuotientSpec(4, coerce(k), 2 * v),
    )


def _search_pair_witness(spec_a: QuotientSpec, spec_b: QuotientSpec, safety):
    """Smallest value in exactly one of the two sets, by doubling cutoffs."""
    exact = spec_a.exact and spec_b.exact
    cutoff = max(
        float(6 * spec_a.k),
        4 * float(spec_a.circle_step()),
        4 * float(spec_b.circle_step()),
        4.0,
    )
    while True:
        va = eigenvalue_set(spec_a, cutoff).values()
        vb = eigenvalue_set(spec_b, cutoff).values()
        candidates = []
        for side, mine, theirs in ((spec_a, va, vb), (spec_b, vb, va)):
            for x in mine:
                if exact:
                    if x not in theirs:
                        candidates.append((float(x), x, side.family))
                else:
                    gap = min(
                        (abs(float(x) - float(y)) for y in theirs), default=math.inf
                    )
                    scale = max(1.0, abs(float(x)))
                    if gap > _SEPARATION_RTOL * scale:
                        candidates.append((float(x), x, side.family))
                    # gaps between merge and separation tolerance stay
                    # ambiguous and are skipped
        if candidates:
            candidates.sort(key=lambda t: t[0])
            _, witness, fam = candidates[0]
            return witness, fam, cutoff
        cutoff *= 2
        if cutoff > safety:
            raise WitnessSearchError(
                f"no witness below safety cutoff {safety} for families "
                f"{spec_a.family} and {spec_b.family}"
            )


def distinctness_report(k, v=None, ratio=None) -> DistinctnessReport:
    """Witness eigenvalues separating the equal-volume quotients pairwise."""
    specs = equal_volume_family(k, v=v, ratio=ratio)
    q = float(specs[0].circle_step())
    safety = 10**4 * max(float(specs[0].k), q)
    witnesses = []
    for i in range(4):
        for j in range(i + 1, 4):
            witness, fam, cutoff = _search_pair_witness(specs[i], specs[j], safety)
            witnesses.append(
                PairWitness(
                    families=(specs[i].family, specs[j].family),
                    witness=witness,
                    member_of=fam,
                    pair=(specs[i].family, specs[j].family),
                    cutoff_used=cutoff,
                )
            )
    return DistinctnessReport(
        k=specs[0].k,
        v=specs[0].v,
        ratio=specs[0].ratio,
        witnesses=tuple(witnesses),
        ok=len(witnesses) == 6,
    )


# ---------------------------------------------------------------------------
# Heat trace for the families with product multiplicities.


def truncated_heat_trace(spec: QuotientSpec, t: float, cutoff=None) -> float:
    """Sum of exp(-t * eigenvalue) with multiplicity, for families 1 and 4.

    Sphere degree m contributes 2m+1 (restricted to even m for family 4),
    the circle mode j contributes 1 for j = 0 and 2 otherwise.  The default
    cutoff 40/t makes the dropped tail negligible at double precision.
    """
    if spec.family not in (1, 4):
        raise UnsupportedMultiplicityError(
            f"family {spec.family} has eigenvalue sets only; heat trace needs "
            "multiplicities (families 1 and 4)"
        )
    if not t > 0:
        raise UsageError(f"heat-trace time must be positive, got {t}")
    if cutoff is None:
        cutoff = 40.0 / t
    k = float(spec.k)
    q = float(spec.circle_step())
    total = 0.0
    m = 0
    while True:
        sphere = m * (m + 1) * k
        if sphere > cutoff:
            break
        if spec.family == 1 or m % 2 == 0:
            sphere_mult = 2 * m + 1
            j = 0
            while True:
                value = sphere + 4 * q * j * j
                if value > cutoff:
                    break
                total += sphere_mult * _circle_mult(2 * j) * math.exp(-t * value)
                j += 1
        m += 1
    return total


def spectrum_csv_rows(prefix: SpectrumPrefix) -> list:
    """CSV rows (m, n, eigenvalue, multiplicity-or-blank), one per (m, n)."""
    rows = ["m,n,eigenvalue,multiplicity"]
    for entry in prefix.entries:
        for m, n in entry.pairs:
            mult = "" if entry.multiplicity is None else str(entry.multiplicity)
            value = entry.value
            text = str(value) if isinstance(value, Fraction) else repr(float(value))
            rows.append(f"{m},{n},{text},{mult}")
    return rows
