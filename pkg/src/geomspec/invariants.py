"""Closed-form curvature and heat invariants as symmetric polynomials.

For a locally homogeneous 3-manifold with principal Ricci curvatures
nu = (nu1, nu2, nu3), every curvature invariant entering the first four heat
coefficients is a symmetric rational function of nu.  Writing P1, P2, P3 for
the elementary symmetric polynomials, the closed forms implemented here are
collected in CLOSED_FORM_TABLE below.

The heat coefficients are

    a0 = vol
    a1 = vol * P1 / 6
    a2 = vol * (9 P1^2 - 12 P2) / 360
    a3 = vol / 720  * (11/7 P1^3 - 12 P3 - 12/7 P1 P2)            [locally symmetric]
    a3 = vol / 5040 * (23 P1^3 - 30 P3 - 72 P1 P2
                       - (6 P1^2 P2^2 - 24 P2^3) / P3)            [unimodular, P3 != 0]

and the repackaged spectral invariants are

    b0 = vol,  b1 = P1,  b2 = P2,
    b3 = 30 P3 + (6 P1^2 P2^2 - 24 P2^3) / P3                     [P3 != 0].

A3 has no closed form for locally homogeneous metrics that are neither
locally symmetric nor covered by a unimodular group with non-degenerate
Ricci; that case is represented by the A3_UNDEFINED regime rather than
guessed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import RegimeError
from .milnor import as_nu
from .rational import encode_scalar

# Formula table (single authoritative statement; rendered in the README).
CLOSED_FORM_TABLE = {
    "scal": "P1",
    "norm_r2": "3*P1^2 - 8*P2",
    "norm_ric2": "P1^2 - 2*P2",
    "rrr": "P1^3 - 24*P3",
    "ric_rr": "P1^3 - 2*P1*P2 - 6*P3",
    "ric_ric_r": "P1*P2 - 6*P3",
    "ric_ric_ric": "P1^3 - 3*P1*P2 + 3*P3",
    "abar": "-(20/63)*P1^3 + (16/7)*P1*P2 - 12*P3",
    "a3_integrand": "(11/7)*P1^3 - (12/7)*P1*P2 - 12*P3",
    "norm_nabla_r2": "-8*P1^3 + 40*P1*P2 - 36*P3 + 4*(P1^2*P2^2 - 4*P2^3)/P3",
    "dbar": "-(3/14) * norm_nabla_r2",
}


class Regime(enum.Enum):
    """Which a3 formula (if any) applies to a Ricci eigenvalue triple."""

    LOCALLY_SYMMETRIC = "locally-symmetric"
    UNIMODULAR_NONDEGENERATE = "unimodular-nondegenerate"
    A3_UNDEFINED = "a3-undefined"


@dataclass(frozen=True)
class ElementarySymmetric:
    """P1 = sum, P2 = sum of pairwise products, P3 = product."""

    p1: object
    p2: object
    p3: object

    @classmethod
    def from_nu(cls, nu) -> "ElementarySymmetric":
        n1, n2, n3 = as_nu(nu)
        return cls(
            p1=n1 + n2 + n3,
            p2=n1 * n2 + n1 * n3 + n2 * n3,
            p3=n1 * n2 * n3,
        )

    def as_tuple(self):
        return (self.p1, self.p2, self.p3)


def elementary_symmetric(nu) -> ElementarySymmetric:
    return ElementarySymmetric.from_nu(nu)


@dataclass(frozen=True)
class CurvatureInvariants:
    """All curvature invariants entering a1..a3.

    norm_nabla_r2 and dbar are None when no closed form applies (P3 = 0 and
    the eigenvalues are not a locally symmetric pattern).
    """

    scal: object
    norm_r2: object
    norm_ric2: object
    rrr: object
    ric_rr: object
    ric_ric_r: object
    ric_ric_ric: object
    abar: object
    a3_integrand: object
    norm_nabla_r2: object = None
    dbar: object = None

    def as_dict(self) -> dict:
        out = {
            "scal": encode_scalar(self.scal),
            "norm_r2": encode_scalar(self.norm_r2),
            "norm_ric2": encode_scalar(self.norm_ric2),
            "rrr": encode_scalar(self.rrr),
            "ric_rr": encode_scalar(self.ric_rr),
            "ric_ric_r": encode_scalar(self.ric_ric_r),
            "ric_ric_ric": encode_scalar(self.ric_ric_ric),
            "abar": encode_scalar(self.abar),
            "a3_integrand": encode_scalar(self.a3_integrand),
        }
        if self.norm_nabla_r2 is not None:
            out["norm_nabla_r2"] = encode_scalar(self.norm_nabla_r2)
            out["dbar"] = encode_scalar(self.dbar)
        return out


@dataclass(frozen=True)
class HeatInvariants:
    """Heat-trace coefficients; a3 is None in the A3_UNDEFINED regime."""

    a0: object
    a1: object
    a2: object
    a3: object
    regime: Regime

    def as_dict(self) -> dict:
        return {
            "a0": encode_scalar(self.a0),
            "a1": encode_scalar(self.a1),
            "a2": encode_scalar(self.a2),
            "a3": None if self.a3 is None else encode_scalar(self.a3),
            "regime": self.regime.value,
        }


@dataclass(frozen=True)
class BInvariants:
    """Repackaged spectral invariants (volume, P1, P2 and the P3 mixing term)."""

    b0: object
    b1: object
    b2: object
    b3: object = None

    def as_dict(self) -> dict:
        return {
            "b0": encode_scalar(self.b0),
            "b1": encode_scalar(self.b1),
            "b2": encode_scalar(self.b2),
            "b3": None if self.b3 is None else encode_scalar(self.b3),
        }


def is_locally_symmetric_pattern(nu) -> bool:
    """True for eigenvalue triples (c,c,c) or (k,k,0), k != 0, up to order.

    These are exactly the patterns of 3-dimensional locally symmetric spaces:
    constant curvature and surface-times-line products.
    """
    s = sorted(as_nu(nu), reverse=True)
    if s[0] == s[1] == s[2]:
        return True
    if s[0] == s[1] != 0 and s[2] == 0:
        return True
    if s[0] == 0 and s[1] == s[2] != 0:
        return True
    return False


def regime_for(nu) -> Regime:
    """Pick the natural regime for an eigenvalue triple.

    Locally symmetric patterns always get the locally symmetric regime (when
    P3 != 0 the two a3 formulas agree, so nothing is lost); otherwise P3 != 0
    selects the unimodular formula and P3 = 0 leaves a3 undefined.
    """
    if is_locally_symmetric_pattern(nu):
        return Regime.LOCALLY_SYMMETRIC
    p3 = ElementarySymmetric.from_nu(nu).p3
    if p3 != 0:
        return Regime.UNIMODULAR_NONDEGENERATE
    return Regime.A3_UNDEFINED


def closed_form_invariants(nu) -> CurvatureInvariants:
    """Evaluate every non-derivative invariant; derivative terms when defined."""
    p1, p2, p3 = ElementarySymmetric.from_nu(nu).as_tuple()
    p1sq = p1 * p1
    p1cu = p1sq * p1
    nabla2 = None
    dbar = None
    if p3 != 0:
        nabla2, dbar = derivative_invariants_closed(nu)
    elif is_locally_symmetric_pattern(nu):
        nabla2, dbar = Fraction(0), Fraction(0)
    return CurvatureInvariants(
        scal=p1,
        norm_r2=3 * p1sq - 8 * p2,
        norm_ric2=p1sq - 2 * p2,
        rrr=p1cu - 24 * p3,
        ric_rr=p1cu - 2 * p1 * p2 - 6 * p3,
        ric_ric_r=p1 * p2 - 6 * p3,
        ric_ric_ric=p1cu - 3 * p1 * p2 + 3 * p3,
        abar=Fraction(-20, 63) * p1cu + Fraction(16, 7) * p1 * p2 - 12 * p3,
        a3_integrand=Fraction(11, 7) * p1cu - Fraction(12, 7) * p1 * p2 - 12 * p3,
        norm_nabla_r2=nabla2,
        dbar=dbar,
    )


def derivative_invariants_closed(nu) -> tuple:
    """(|grad R|^2, Dbar) for a unimodular metric with non-degenerate Ricci."""
    p1, p2, p3 = ElementarySymmetric.from_nu(nu).as_tuple()
    if p3 == 0:
        raise RegimeError(
            "derivative invariants need all Ricci eigenvalues non-zero (P3 != 0)"
        )
    nabla2 = (
        -8 * p1**3
        + 40 * p1 * p2
        - 36 * p3
        + 4 * (p1 * p1 * p2 * p2 - 4 * p2**3) / p3
    )
    return nabla2, Fraction(-3, 14) * nabla2


def heat_invariants(nu, vol, regime: Regime | None = None) -> HeatInvariants:
    """Heat coefficients a0..a3 for the given eigenvalues and volume.

    The regime controls the a3 branch and is validated structurally:
    LOCALLY_SYMMETRIC demands a (c,c,c) or (k,k,0) pattern, and
    UNIMODULAR_NONDEGENERATE demands P3 != 0.  With regime=None the natural
    regime is chosen via regime_for().
    """
    triple = as_nu(nu)
    p1, p2, p3 = ElementarySymmetric.from_nu(triple).as_tuple()
    if regime is None:
        regime = regime_for(triple)

    a1 = vol * p1 / 6
    a2 = vol * (9 * p1 * p1 - 12 * p2) / 360

    if regime is Regime.LOCALLY_SYMMETRIC:
        if not is_locally_symmetric_pattern(triple):
            raise RegimeError(
                f"{triple} is not a locally symmetric eigenvalue pattern "
                "((c,c,c) or (k,k,0) up to order)"
            )
        integrand = closed_form_invariants(triple).a3_integrand
        a3 = vol * integrand / 720
    elif regime is Regime.UNIMODULAR_NONDEGENERATE:
        if p3 == 0:
            raise RegimeError(
                "unimodular a3 needs all Ricci eigenvalues non-zero (P3 != 0)"
            )
        mixing = (6 * p1 * p1 * p2 * p2 - 24 * p2**3) / p3
        a3 = vol * (23 * p1**3 - 30 * p3 - 72 * p1 * p2 - mixing) / 5040
    elif regime is Regime.A3_UNDEFINED:
        a3 = None
    else:
        raise RegimeError(f"unknown regime {regime!r}")

    return HeatInvariants(a0=vol, a1=a1, a2=a2, a3=a3, regime=regime)


def b_invariants(nu, vol) -> BInvariants:
    """Spectral invariants (vol, P1, P2, b3); b3 is absent when P3 = 0."""
    p1, p2, p3 = ElementarySymmetric.from_nu(nu).as_tuple()
    b3 = None
    if p3 != 0:
        b3 = 30 * p3 + (6 * p1 * p1 * p2 * p2 - 24 * p2**3) / p3
    return BInvariants(b0=vol, b1=p1, b2=p2, b3=b3)
