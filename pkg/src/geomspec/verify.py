"""Seeded property suites behind the `verify` command.

Two suites, both exact:

- oracle equivalence: on random rational structure constants in [-3, 3]^3
  with all Ricci eigenvalues nonzero, every closed-form invariant equals the
  tensor-contraction oracle, the derivative identities
  -(14/3) Dbar = 4 |grad Ric|^2 = |grad R|^2 hold, and the
  connection-coefficient form of |grad R|^2 agrees with the contraction;
- region check: the sign certificate f <= 0 / df/dy > 0 on the rational grid.

Everything is driven by one seed; identical (samples, seed, step) inputs
produce identical result payloads.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .audibility import polysign_region_check
from .invariants import closed_form_invariants, derivative_invariants_closed
from .milnor import MilnorData
from .rational import encode_scalar
from .tensors import (
    gamma_form_norm_nabla_r2,
    oracle_derivative_invariants,
    oracle_scalar_invariants,
)

SCALAR_FIELDS = (
    "scal",
    "norm_r2",
    "norm_ric2",
    "rrr",
    "ric_rr",
    "ric_ric_r",
    "ric_ric_ric",
    "abar",
    "a3_integrand",
)

_MAX_REPORTED_FAILURES = 5


def random_lambda(rng: random.Random) -> tuple:
    """A random rational triple in [-3, 3]^3 with denominators up to 10."""
    out = []
    for _ in range(3):
        den = rng.randint(1, 10)
        num = rng.randint(-3 * den, 3 * den)
        out.append(Fraction(num, den))
    return tuple(out)


def check_sample(lam) -> list:
    """All exact checks for one structure-constant triple; returns failures."""
    failures = []
    milnor = MilnorData.from_lambda(lam)
    nu = milnor.ricci()
    oracle = oracle_scalar_invariants(milnor)
    closed = closed_form_invariants(nu)
    for f in SCALAR_FIELDS:
        if getattr(oracle, f) != getattr(closed, f):
            failures.append((lam, f, getattr(oracle, f), getattr(closed, f)))
    nabla_r2, nabla_ric2, dbar = oracle_derivative_invariants(milnor)
    closed_nabla, closed_dbar = derivative_invariants_closed(nu)
    if nabla_r2 != closed_nabla:
        failures.append((lam, "norm_nabla_r2", nabla_r2, closed_nabla))
    if dbar != closed_dbar:
        failures.append((lam, "dbar", dbar, closed_dbar))
    if nabla_r2 != 4 * nabla_ric2:
        failures.append((lam, "norm_nabla_r2 == 4*norm_nabla_ric2", nabla_r2, nabla_ric2))
    if Fraction(-14, 3) * dbar != nabla_r2:
        failures.append((lam, "-(14/3)*dbar == norm_nabla_r2", dbar, nabla_r2))
    if gamma_form_norm_nabla_r2(milnor) != nabla_r2:
        failures.append((lam, "gamma form", gamma_form_norm_nabla_r2(milnor), nabla_r2))
    return failures


def run_verification(samples: int = 1000, seed: int = 0, step=Fraction(1, 100)) -> dict:
    """Run both suites; the result dict is deterministic in (samples, seed, step)."""
    rng = random.Random(seed)
    failures = []
    checked = 0
    drawn = 0
    while checked < samples:
        lam = random_lambda(rng)
        drawn += 1
        if 0 in MilnorData.from_lambda(lam).ricci():
            continue
        checked += 1
        failures.extend(check_sample(lam))

    region = polysign_region_check(step)
    oracle_ok = not failures
    result = {
        "seed": seed,
        "samples": samples,
        "draws": drawn,
        "oracle_equivalence": {
            "status": "pass" if oracle_ok else "fail",
            "failures": [
                {
                    "lambda": [encode_scalar(v) for v in lam],
                    "field": field,
                    "oracle": encode_scalar(a),
                    "closed_form": encode_scalar(b),
                }
                for lam, field, a, b in failures[:_MAX_REPORTED_FAILURES]
            ],
        },
        "region_check": {
            "status": "pass" if region.ok else "fail",
            **region.as_dict(),
        },
        "ok": oracle_ok and region.ok,
    }
    return result
