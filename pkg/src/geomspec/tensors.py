"""Frame-tensor algebra: a brute-force oracle for every curvature invariant.

Everything here works in an orthonormal frame {E1, E2, E3} with bracket
relations [E1,E2] = l3 E3 (cyclic), the frame metric being the identity, so
raising and lowering indices is trivial.  Components of all tensors built
from the curvature are constant in such a frame, which reduces covariant
differentiation to connection contractions.

Sign convention, fixed once: R(X,Y)Z = D_[X,Y] Z - [D_X, D_Y] Z, so that the
sectional curvature of the plane spanned by orthonormal X, Y is
Sec(X,Y) = R(X,Y,X,Y).

The invariants produced here never use the symmetric-polynomial closed forms
of :mod:`geomspec.invariants`; they are obtained by expanding the curvature
definition on frame fields and contracting, and serve as the independent
check of those closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from .errors import RankOverflowError, ShapeError
from .invariants import CurvatureInvariants
from .milnor import MilnorData

MAX_RANK = 5

# Levi-Civita signs for the six permutations of (0,1,2).
_EPS = {
    (0, 1, 2): 1,
    (1, 2, 0): 1,
    (2, 0, 1): 1,
    (0, 2, 1): -1,
    (2, 1, 0): -1,
    (1, 0, 2): -1,
}

_ZERO = Fraction(0)


@dataclass(frozen=True)
class FrameTensor:
    """Dense rank-r array of 3^r components, indexed by frame indices 0..2.

    Components are stored flat in row-major order, so a rank-4 tensor is at
    the same time the 9x9 matrix indexed by the index pairs (ij), (kl).
    """

    rank: int
    components: tuple

    def __post_init__(self):
        if not 0 <= self.rank <= MAX_RANK:
            raise RankOverflowError(f"rank {self.rank} outside supported 0..{MAX_RANK}")
        if len(self.components) != 3**self.rank:
            raise ShapeError(
                f"rank {self.rank} needs {3 ** self.rank} components, "
                f"got {len(self.components)}"
            )

    @classmethod
    def build(cls, rank: int, fn: Callable) -> "FrameTensor":
        return cls(
            rank=rank,
            components=tuple(fn(*idx) for idx in product(range(3), repeat=rank)),
        )

    @classmethod
    def zero(cls, rank: int) -> "FrameTensor":
        return cls(rank=rank, components=(_ZERO,) * 3**rank)

    @classmethod
    def metric(cls) -> "FrameTensor":
        """The frame metric: the rank-2 identity."""
        return cls.build(2, lambda i, j: Fraction(int(i == j)))

    def get(self, *idx):
        flat = 0
        for i in idx:
            flat = flat * 3 + i
        return self.components[flat]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.components)


@dataclass(frozen=True)
class ConnectionCoefficients:
    """gamma[i][j][k] = <D_{E_i} E_j, E_k> in a Milnor frame.

    Nonzero only for pairwise distinct (i,j,k), where the value is the
    permutation sign times mu_i; in particular D_{E_j} E_j = 0 and the array
    is antisymmetric in its last two slots.
    """

    gamma: tuple

    def __call__(self, i: int, j: int, k: int):
        return self.gamma[i][j][k]

    def nonzero_map(self) -> dict:
        """(i, j) -> (k, gamma[i][j][k]) for the single nonzero k, if any."""
        out = {}
        for i, j in product(range(3), repeat=2):
            if i == j:
                continue
            k = 3 - i - j
            v = self.gamma[i][j][k]
            if v != 0:
                out[(i, j)] = (k, v)
        return out


def frame_connection(milnor: MilnorData) -> ConnectionCoefficients:
    """Connection coefficients of the left-invariant metric in its Milnor frame."""
    mu = milnor.mu
    gamma = tuple(
        tuple(
            tuple(
                _EPS[(i, j, k)] * mu[i] if (i, j, k) in _EPS else _ZERO
                for k in range(3)
            )
            for j in range(3)
        )
        for i in range(3)
    )
    return ConnectionCoefficients(gamma=gamma)


def curvature_tensor_oracle(
    conn: ConnectionCoefficients, milnor: MilnorData
) -> FrameTensor:
    """All components R(E_i, E_j, E_k, E_l), by expanding the definition.

    Expands R(X,Y)Z = D_[X,Y] Z - D_X D_Y Z + D_Y D_X Z on frame fields using
    the bracket relations and the connection; no closed form enters.
    """
    lam = milnor.lam
    g = conn.gamma

    def bracket(i, j, m):
        return _EPS[(i, j, m)] * lam[m] if (i, j, m) in _EPS else _ZERO

    def component(i, j, k, l):
        total = _ZERO
        for m in range(3):
            total += bracket(i, j, m) * g[m][k][l]
            total -= g[j][k][m] * g[i][m][l]
            total += g[i][k][m] * g[j][m][l]
        return total

    return FrameTensor.build(4, component)


def ricci_tensor(riemann: FrameTensor) -> FrameTensor:
    """Ricci from the curvature tensor: rho_{jl} = sum_i R(E_j, E_i, E_l, E_i)."""
    if riemann.rank != 4:
        raise ShapeError("ricci_tensor expects a rank-4 tensor")
    return FrameTensor.build(
        2, lambda j, l: sum(riemann.get(j, i, l, i) for i in range(3))
    )


def covariant_derivative(
    t: FrameTensor, conn: ConnectionCoefficients
) -> FrameTensor:
    """(D t)(E_a; ...) for a frame-constant tensor; the new slot comes first.

    Directional-derivative terms vanish because the components are constant,
    leaving only the connection contractions on each original slot.
    """
    if t.rank + 1 > MAX_RANK:
        raise RankOverflowError(
            f"derivative of a rank-{t.rank} tensor exceeds max rank {MAX_RANK}"
        )
    r = t.rank
    comp = t.components
    nz = conn.nonzero_map()
    powers = [3**p for p in range(r)]  # powers[p] = stride of slot r-1-p

    out = []
    for a in range(3):
        for idx in product(range(3), repeat=r):
            flat = 0
            for i in idx:
                flat = flat * 3 + i
            val = _ZERO
            for s in range(r):
                hit = nz.get((a, idx[s]))
                if hit is None:
                    continue
                m, gval = hit
                val -= gval * comp[flat + (m - idx[s]) * powers[r - 1 - s]]
            out.append(val)
    return FrameTensor(rank=r + 1, components=tuple(out))


# ---------------------------------------------------------------------------
# Contraction patterns.  The frame metric is the identity, so all pairings
# are plain component sums.

PAIR = "(P,Q)"
NORM2 = "|P|^2"
TRIPLE = "(P,Q,T)"
RIC_PAIR = "(U;Q,T)"
DOUBLE_RIC = "(U;V;T)"
TRACE3 = "(UVW)"

PATTERNS = (PAIR, NORM2, TRIPLE, RIC_PAIR, DOUBLE_RIC, TRACE3)


def full_pair(p: FrameTensor, q: FrameTensor):
    """Sum of componentwise products over all slots; needs equal ranks."""
    if p.rank != q.rank:
        raise ShapeError(f"pairing needs equal ranks, got {p.rank} and {q.rank}")
    total = _ZERO
    for a, b in zip(p.components, q.components):
        if a and b:
            total += a * b
    return total


def triple_product(p: FrameTensor, q: FrameTensor, t: FrameTensor):
    """P^{ij}_{kl} Q^{kl}_{rs} T^{rs}_{ij}: trace of the 9x9 matrix product."""
    for x in (p, q, t):
        if x.rank != 4:
            raise ShapeError("(P,Q,T) needs three rank-4 tensors")
    pc, qc, tc = p.components, q.components, t.components
    total = _ZERO
    for al in range(9):
        prow = al * 9
        for be in range(9):
            pv = pc[prow + be]
            if not pv:
                continue
            qrow = be * 9
            for ga in range(9):
                qv = qc[qrow + ga]
                if not qv:
                    continue
                tv = tc[ga * 9 + al]
                if tv:
                    total += pv * qv * tv
    return total


def ric_pair(u: FrameTensor, q: FrameTensor, t: FrameTensor):
    """U^{rs} Q_{rjkl} T_s^{jkl}."""
    if u.rank != 2 or q.rank != 4 or t.rank != 4:
        raise ShapeError("(U;Q,T) needs ranks (2, 4, 4)")
    qc, tc = q.components, t.components
    total = _ZERO
    for r in range(3):
        for s in range(3):
            uv = u.get(r, s)
            if not uv:
                continue
            inner = _ZERO
            qrow = r * 27
            trow = s * 27
            for off in range(27):
                a = qc[qrow + off]
                if a:
                    b = tc[trow + off]
                    if b:
                        inner += a * b
            if inner:
                total += uv * inner
    return total


def double_ric(u: FrameTensor, v: FrameTensor, t: FrameTensor):
    """U^{ab} V^{cd} T_{acbd}.

    The symmetric slot pairs of U and V are interleaved across the slot pairs
    of T; hooking them into adjacent slots instead would contract a symmetric
    pair against an antisymmetric one and vanish identically for T = R.
    """
    if u.rank != 2 or v.rank != 2 or t.rank != 4:
        raise ShapeError("(U;V;T) needs ranks (2, 2, 4)")
    total = _ZERO
    for a, b in product(range(3), repeat=2):
        uv = u.get(a, b)
        if not uv:
            continue
        for c, d in product(range(3), repeat=2):
            vv = v.get(c, d)
            if vv:
                tv = t.get(a, c, b, d)
                if tv:
                    total += uv * vv * tv
    return total


def trace3(u: FrameTensor, v: FrameTensor, w: FrameTensor):
    """U^i_j V^j_k W^k_i."""
    for x in (u, v, w):
        if x.rank != 2:
            raise ShapeError("(UVW) needs three rank-2 tensors")
    total = _ZERO
    for i, j, k in product(range(3), repeat=3):
        a = u.get(i, j)
        if not a:
            continue
        b = v.get(j, k)
        if b:
            c = w.get(k, i)
            if c:
                total += a * b * c
    return total


def contract(pattern: str, *tensors: FrameTensor):
    """Dispatch one of the six contraction patterns."""
    table = {
        PAIR: (2, lambda p, q: full_pair(p, q)),
        NORM2: (1, lambda p: full_pair(p, p)),
        TRIPLE: (3, triple_product),
        RIC_PAIR: (3, ric_pair),
        DOUBLE_RIC: (3, double_ric),
        TRACE3: (3, trace3),
    }
    if pattern not in table:
        raise ShapeError(f"unknown contraction pattern {pattern!r}; use one of {PATTERNS}")
    arity, fn = table[pattern]
    if len(tensors) != arity:
        raise ShapeError(f"pattern {pattern} takes {arity} tensors, got {len(tensors)}")
    return fn(*tensors)


# ---------------------------------------------------------------------------
# Assembled invariants.


def oracle_scalar_invariants(milnor: MilnorData) -> CurvatureInvariants:
    """Every non-derivative invariant, by explicit contraction only."""
    conn = frame_connection(milnor)
    riem = curvature_tensor_oracle(conn, milnor)
    ric = ricci_tensor(riem)

    scal = sum(ric.get(i, i) for i in range(3))
    norm_r2 = full_pair(riem, riem)
    norm_ric2 = full_pair(ric, ric)
    rrr = triple_product(riem, riem, riem)
    ric_rr = ric_pair(ric, riem, riem)
    ric_ric_r = double_ric(ric, ric, riem)
    ric_ric_ric = trace3(ric, ric, ric)
    abar = (
        Fraction(8, 21) * rrr
        - Fraction(8, 63) * ric_rr
        + Fraction(20, 63) * ric_ric_r
        - Fraction(4, 7) * ric_ric_ric
    )
    a3_integrand = (
        abar
        + Fraction(2, 3) * scal * (norm_r2 - norm_ric2)
        + Fraction(5, 9) * scal**3
    )
    return CurvatureInvariants(
        scal=scal,
        norm_r2=norm_r2,
        norm_ric2=norm_ric2,
        rrr=rrr,
        ric_rr=ric_rr,
        ric_ric_r=ric_ric_r,
        ric_ric_ric=ric_ric_ric,
        abar=abar,
        a3_integrand=a3_integrand,
    )


def oracle_derivative_invariants(milnor: MilnorData) -> tuple:
    """(|grad R|^2, |grad Ric|^2, Dbar) by contraction of covariant derivatives.

    Dbar is assembled from its definition -(1/9)|grad R|^2 -(26/63)|grad Ric|^2
    (the |grad Scal|^2 term drops since the scalar curvature is constant);
    the identities -(14/3) Dbar = 4 |grad Ric|^2 = |grad R|^2 are theorems to
    be checked against this output, not built into it.
    """
    conn = frame_connection(milnor)
    riem = curvature_tensor_oracle(conn, milnor)
    ric = ricci_tensor(riem)
    nabla_r = covariant_derivative(riem, conn)
    nabla_ric = covariant_derivative(ric, conn)
    norm_nabla_r2 = full_pair(nabla_r, nabla_r)
    norm_nabla_ric2 = full_pair(nabla_ric, nabla_ric)
    dbar = -Fraction(1, 9) * norm_nabla_r2 - Fraction(26, 63) * norm_nabla_ric2
    return norm_nabla_r2, norm_nabla_ric2, dbar


def gamma_form_norm_nabla_r2(milnor: MilnorData):
    """|grad R|^2 via the connection-coefficient form.

    8 { (G_12^3 K13 + G_13^2 K12)^2 + (G_21^3 K23 + G_23^1 K12)^2
        + (G_31^2 K23 + G_32^1 K13)^2 }
    with K_ij the principal curvatures of the oracle tensor.  A third route,
    independent of both the rank-5 contraction and the closed forms.
    """
    conn = frame_connection(milnor)
    riem = curvature_tensor_oracle(conn, milnor)
    g = conn.gamma
    k12 = riem.get(0, 1, 0, 1)
    k13 = riem.get(0, 2, 0, 2)
    k23 = riem.get(1, 2, 1, 2)
    return 8 * (
        (g[0][1][2] * k13 + g[0][2][1] * k12) ** 2
        + (g[1][0][2] * k23 + g[1][2][0] * k12) ** 2
        + (g[2][0][1] * k23 + g[2][1][0] * k13) ** 2
    )
