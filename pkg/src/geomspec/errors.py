"""Exception hierarchy with stable machine-readable error codes.

Every error that can cross the CLI boundary carries a ``code`` string that is
kept stable for scripting against JSON output.
"""

from __future__ import annotations


class GeomspecError(Exception):
    """Base class for all library errors."""

    code = "error"


class UsageError(GeomspecError):
    """Malformed request: bad flags, unparsable literals, unknown command."""

    code = "usage-error"


class RegimeError(GeomspecError):
    """An operation was requested outside the regime where it is defined."""

    code = "regime-error"


class NotRealizableError(GeomspecError):
    """The Ricci eigenvalue pattern is not realizable by any unimodular group."""

    code = "not-realizable"


class AmbiguousGeometryError(GeomspecError):
    """The input is realizable but does not pin down a single Lie group.

    Raised for the degenerate signature (0,0,-), which is carried by both Sol
    and the universal cover of SL(2,R), and for degenerate eigenvalue triples
    that admit a continuum of structure constants.
    """

    code = "ambiguous-geometry"

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class ShapeError(GeomspecError):
    """Tensor ranks do not match the requested contraction pattern."""

    code = "shape-error"


class RankOverflowError(ShapeError):
    """A derivative would push a frame tensor beyond the supported rank."""

    code = "rank-overflow"


class UnsupportedMultiplicityError(GeomspecError):
    """Eigenvalue multiplicities are not available for this quotient family."""

    code = "unsupported-multiplicity"


class WitnessSearchError(GeomspecError):
    """A spectra distinctness search exceeded its safety cutoff."""

    code = "witness-search-failed"
