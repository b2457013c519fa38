"""Structure constants of unimodular 3D Lie algebras and Ricci eigenvalue data.

A metric on a simply-connected unimodular 3D Lie group is encoded, in an
orthonormal frame diagonalizing Ricci, by structure constants (l1, l2, l3)
with bracket relations

    [E1, E2] = l3 E3,   [E2, E3] = l1 E1,   [E3, E1] = l2 E2.

Derived quantities:

    mu_i = (l1 + l2 + l3)/2 - l_i
    nu_1 = 2 mu_2 mu_3,  nu_2 = 2 mu_1 mu_3,  nu_3 = 2 mu_1 mu_2   (Ricci eigenvalues)

The sign pattern of (l1, l2, l3), up to permutation and overall negation,
identifies the group; the eigenvalue triple nu identifies the isometry class
of the metric when Ricci is non-degenerate, and (lam) and (-lam) give
isometric metrics.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import AmbiguousGeometryError, NotRealizableError
from .rational import coerce_triple, sign, sqrt_any


class GroupTag(enum.Enum):
    """The six simply-connected unimodular 3D Lie groups.

    E2_TILDE is the universal cover of the Euclidean-plane isometry group,
    i.e. R^2 semidirect R acting by rotations.
    """

    R3 = "R3"
    SU2 = "SU2"
    SL2R_TILDE = "SL2R_tilde"
    NIL = "Nil"
    SOL = "Sol"
    E2_TILDE = "E2_tilde"


@dataclass(frozen=True)
class MilnorData:
    """Structure constants lam = (l1, l2, l3) plus the derived mu triple."""

    lam: tuple
    mu: tuple

    @classmethod
    def from_lambda(cls, lam) -> "MilnorData":
        lam = coerce_triple(lam)
        return cls(lam=lam, mu=mu_from_lambda(lam))

    def ricci(self) -> tuple:
        m1, m2, m3 = self.mu
        return (2 * m2 * m3, 2 * m1 * m3, 2 * m1 * m2)

    def group(self) -> GroupTag:
        return group_from_lambda(self.lam)

    def __neg__(self) -> "MilnorData":
        return MilnorData(
            lam=tuple(-x for x in self.lam), mu=tuple(-x for x in self.mu)
        )


@dataclass(frozen=True)
class RicciEigenvalues:
    """Principal Ricci curvatures (nu1, nu2, nu3), attached to frame order."""

    nu: tuple

    @classmethod
    def of(cls, nu) -> "RicciEigenvalues":
        if isinstance(nu, RicciEigenvalues):
            return nu
        return cls(nu=coerce_triple(nu))

    @classmethod
    def from_lambda(cls, lam) -> "RicciEigenvalues":
        return cls(nu=ricci_from_lambda(lam))

    def multiset(self) -> tuple:
        """Order-free view, sorted descending."""
        return tuple(sorted(self.nu, reverse=True))

    def sign_pattern(self) -> tuple:
        """Signs sorted descending, e.g. (1, -1, -1)."""
        return tuple(sorted((sign(x) for x in self.nu), reverse=True))


def as_nu(nu) -> tuple:
    """Accept a RicciEigenvalues or any 3-sequence of scalars, return a triple."""
    if isinstance(nu, RicciEigenvalues):
        return nu.nu
    return coerce_triple(nu)


def mu_from_lambda(lam) -> tuple:
    lam = coerce_triple(lam)
    half_sum = sum(lam) / 2
    return tuple(half_sum - x for x in lam)


def ricci_from_lambda(lam) -> tuple:
    m1, m2, m3 = mu_from_lambda(lam)
    return (2 * m2 * m3, 2 * m1 * m3, 2 * m1 * m2)


def sectional_from_ricci(nu) -> tuple:
    """Principal sectional curvatures (K12, K13, K23) from Ricci eigenvalues.

    K_ij = (P1(nu) - 2 nu_k)/2 where k is the index complementary to {i, j}.
    """
    n1, n2, n3 = as_nu(nu)
    p1 = n1 + n2 + n3
    return ((p1 - 2 * n3) / 2, (p1 - 2 * n2) / 2, (p1 - 2 * n1) / 2)


def sign_pattern(values) -> tuple:
    """Signs of a triple, sorted descending (+1 before 0 before -1)."""
    return tuple(sorted((sign(x) for x in coerce_triple(values)), reverse=True))


_LAMBDA_PATTERN_TO_GROUP = {
    (3, 0, 0): GroupTag.SU2,
    (2, 1, 0): GroupTag.SL2R_TILDE,
    (2, 0, 1): GroupTag.E2_TILDE,
    (1, 1, 1): GroupTag.SOL,
    (1, 0, 2): GroupTag.NIL,
    (0, 0, 3): GroupTag.R3,
}


def group_from_lambda(lam) -> GroupTag:
    """Classify the group from the signs of the structure constants.

    The sign pattern is taken up to permutation and overall negation, since
    (lam) and (-lam) define isometric metrics on the same group.
    """
    signs = [sign(x) for x in coerce_triple(lam)]
    pos = signs.count(1)
    neg = signs.count(-1)
    if neg > pos:
        pos, neg = neg, pos
    return _LAMBDA_PATTERN_TO_GROUP[(pos, neg, 3 - pos - neg)]


def lambda_from_ricci(nu) -> tuple:
    """Recover the structure constants from non-degenerate Ricci eigenvalues.

    Returns the pair (MilnorData, -MilnorData); the two represent a single
    isometry class.  Uses |mu_i| = sqrt(nu_j nu_k / (2 nu_i)) and resolves the
    two consistent sign branches from the signs of nu.  Components are exact
    Fractions whenever the square roots are rational, floats otherwise.

    Raises NotRealizableError when the sign pattern is not realizable by any
    unimodular group, and AmbiguousGeometryError for realizable degenerate
    patterns ((+,0,0) and (0,0,-)), which admit a continuum of structure
    constants sharing the same eigenvalues.
    """
    n1, n2, n3 = as_nu(nu)
    zeros = sum(1 for x in (n1, n2, n3) if x == 0)
    if zeros == 3:
        flat = MilnorData.from_lambda((0, 0, 0))
        return (flat, flat)
    if zeros > 0:
        pattern = sign_pattern((n1, n2, n3))
        if pattern in ((1, 0, 0), (0, 0, -1)):
            raise AmbiguousGeometryError(
                f"eigenvalues {(n1, n2, n3)} admit a one-parameter family of "
                "structure constants",
                candidates=(GroupTag.SOL, GroupTag.SL2R_TILDE)
                if pattern == (0, 0, -1)
                else (GroupTag.SU2,),
            )
        raise NotRealizableError(
            f"sign pattern {pattern} is not realizable by a unimodular group"
        )
    if n1 * n2 * n3 <= 0:
        raise NotRealizableError(
            f"eigenvalues {(n1, n2, n3)} have non-positive product; "
            "not realizable by a unimodular group"
        )
    m1 = sqrt_any(n2 * n3 / (2 * n1))
    m2 = sqrt_any(n1 * n3 / (2 * n2))
    m3 = sqrt_any(n1 * n2 / (2 * n3))
    if not all(isinstance(m, Fraction) for m in (m1, m2, m3)):
        m1, m2, m3 = float(m1), float(m2), float(m3)
    # Fix sign(mu1) = +1; then nu_3 = 2 mu_1 mu_2 and nu_2 = 2 mu_1 mu_3
    # force sign(mu2) = sign(nu3) and sign(mu3) = sign(nu2).  Consistency with
    # nu_1 = 2 mu_2 mu_3 holds exactly when the product of the nu is positive.
    mu = (m1, sign(n3) * m2, sign(n2) * m3)
    lam = (mu[1] + mu[2], mu[0] + mu[2], mu[0] + mu[1])
    data = MilnorData(lam=lam, mu=mu)
    return (data, -data)


def group_from_ricci(nu) -> GroupTag:
    """Classify the group carrying a metric with the given Ricci eigenvalues.

    For the non-degenerate signature (+,-,-) the classification reads, after
    sorting so that nu1 > 0 > nu2 >= nu3 (hence |nu2| <= |nu3|):

        nu1 > |nu3|          -> SU2
        nu1 < |nu2|          -> SL2R~
        |nu2| < nu1 < |nu3|  -> SL2R~
        nu1 = |nu2| = |nu3|  -> Nil
        nu1 = |nu2| < |nu3|  -> Sol
        nu1 = |nu3| > |nu2|  -> E2~

    The degenerate pattern (0,0,-) is carried by both Sol and SL2R~ and raises
    AmbiguousGeometryError; inadmissible patterns raise NotRealizableError.
    """
    triple = as_nu(nu)
    pattern = sign_pattern(triple)
    if pattern == (0, 0, 0):
        return GroupTag.R3
    if pattern in ((1, 1, 1), (1, 0, 0)):
        return GroupTag.SU2
    if pattern == (0, 0, -1):
        raise AmbiguousGeometryError(
            f"signature (0,0,-) of {triple} is carried by both Sol and SL2R~",
            candidates=(GroupTag.SOL, GroupTag.SL2R_TILDE),
        )
    if pattern != (1, -1, -1):
        raise NotRealizableError(
            f"sign pattern {pattern} is not realizable by a unimodular group"
        )
    n1, n2, n3 = sorted(triple, reverse=True)
    a, b, c = n1, -n2, -n3  # a > 0, 0 < b <= c
    if a > c:
        return GroupTag.SU2
    if a < b or a < c:
        if a == b:
            return GroupTag.SOL
        return GroupTag.SL2R_TILDE
    # a == c from here on
    if b == c:
        return GroupTag.NIL
    return GroupTag.E2_TILDE
