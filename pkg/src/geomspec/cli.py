"""Command-line front end.

Commands: classify, invariants, partners, spectrum, distinctness, heattrace,
verify.  Scalars accept rational literals everywhere ('3/2', '-4', '0.25'),
so golden outputs are exact.  JSON output is canonical: sorted keys, compact
separators, rationals rendered as 'p/q' strings.  Identical requests (and,
for verify, identical seeds) produce byte-identical payloads; wall time is
tracked in the run manifest but deliberately kept out of the emitted JSON.

Exit codes: 0 success, 1 verify-suite or domain failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .audibility import classify_isospectral_partners
from .errors import GeomspecError, UsageError
from .invariants import (
    Regime,
    b_invariants,
    closed_form_invariants,
    heat_invariants,
    regime_for,
)
from .milnor import (
    MilnorData,
    group_from_lambda,
    group_from_ricci,
    ricci_from_lambda,
)
from .rational import encode_scalar, parse_rational
from .spectra import (
    QuotientSpec,
    distinctness_report,
    eigenvalue_set,
    quotient_volume,
    spectrum_csv_rows,
    truncated_heat_trace,
)
from .verify import run_verification

COMMANDS = (
    "classify",
    "invariants",
    "partners",
    "spectrum",
    "distinctness",
    "heattrace",
    "verify",
)

_REGIMES = {
    "auto": None,
    "locally-symmetric": Regime.LOCALLY_SYMMETRIC,
    "unimodular-nondegenerate": Regime.UNIMODULAR_NONDEGENERATE,
    "a3-undefined": Regime.A3_UNDEFINED,
}


@dataclass(frozen=True)
class CommandRequest:
    """A validated command with its parameters and output format."""

    command: str
    params: dict
    fmt: str = "json"


@dataclass
class RunManifest:
    """Result envelope; wall_time_ms is excluded from canonical output."""

    tool_version: str
    command: str
    parameters: dict
    seed: int | None
    wall_time_ms: float
    result: dict = field(default_factory=dict)

    def payload(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "result": self.result,
        }


def _parse_triple(text: str) -> tuple:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 3:
        raise UsageError(f"expected three comma-separated values, got {text!r}")
    return tuple(parse_rational(p) for p in parts)


def _positive(value: Fraction, name: str) -> Fraction:
    if not value > 0:
        raise UsageError(f"{name} must be positive, got {value}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geomspec",
        description="Curvature and heat invariants of compact locally "
        "homogeneous 3-manifolds, partner classification, and spectra of "
        "spherical product quotients.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, choices=("json", "text")):
        p.add_argument("--format", choices=choices, default="json")

    p = sub.add_parser("classify", help="identify the Lie group / geometry")
    p.add_argument("--lambda", dest="lam", help="structure constants l1,l2,l3")
    p.add_argument("--nu", help="Ricci eigenvalues n1,n2,n3")
    add_format(p)

    p = sub.add_parser("invariants", help="heat and b invariants")
    p.add_argument("--lambda", dest="lam", help="structure constants l1,l2,l3")
    p.add_argument("--nu", help="Ricci eigenvalues n1,n2,n3")
    p.add_argument("--vol", required=True, help="volume (rational literal)")
    p.add_argument("--regime", choices=sorted(_REGIMES), default="auto")
    add_format(p)

    p = sub.add_parser("partners", help="classify compatible partner classes")
    p.add_argument("--nu", required=True, help="Ricci eigenvalues n1,n2,n3")
    p.add_argument("--vol", required=True, help="volume (rational literal)")
    p.add_argument("--regime", choices=sorted(_REGIMES), default="auto")
    add_format(p)

    p = sub.add_parser("spectrum", help="eigenvalues of a quotient family")
    p.add_argument("--family", required=True, type=int, choices=(1, 2, 3, 4))
    p.add_argument("--k", required=True, help="sphere curvature")
    p.add_argument("--v", help="translation length (numeric)")
    p.add_argument("--ratio", help="exact pi^2/v^2 (rational literal)")
    p.add_argument("--cutoff", required=True, help="eigenvalue cutoff")
    add_format(p, choices=("json", "csv", "text"))

    p = sub.add_parser("distinctness", help="pairwise spectral witnesses")
    p.add_argument("--k", required=True, help="sphere curvature")
    p.add_argument("--v", help="translation length (numeric)")
    p.add_argument("--ratio", help="exact pi^2/v^2 (rational literal)")
    add_format(p)

    p = sub.add_parser("heattrace", help="truncated heat trace (families 1, 4)")
    p.add_argument("--family", required=True, type=int, choices=(1, 2, 3, 4))
    p.add_argument("--k", required=True, help="sphere curvature")
    p.add_argument("--v", help="translation length (numeric)")
    p.add_argument("--ratio", help="exact pi^2/v^2 (rational literal)")
    p.add_argument("--t", required=True, type=float, help="heat time")
    p.add_argument("--cutoff", type=float, help="eigenvalue cutoff (default 40/t)")
    add_format(p)

    p = sub.add_parser("verify", help="seeded exact property suites")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step", default="1/100", help="region-scan grid step")
    add_format(p)

    return parser


def parse_request(argv: list) -> CommandRequest:
    """Parse and validate argv into a CommandRequest.

    argparse reports unknown commands/flags itself with exit code 2; the
    value-level validation below raises UsageError, which main() also maps
    to exit code 2.
    """
    ns = _build_parser().parse_args(argv)
    params: dict = {}
    cmd = ns.command

    if cmd in ("classify", "invariants"):
        lam = getattr(ns, "lam", None)
        nu = getattr(ns, "nu", None)
        if (lam is None) == (nu is None):
            raise UsageError("specify exactly one of --lambda and --nu")
        if lam is not None:
            params["lambda"] = _parse_triple(lam)
        else:
            params["nu"] = _parse_triple(nu)
    if cmd == "partners":
        params["nu"] = _parse_triple(ns.nu)
    if cmd in ("invariants", "partners"):
        params["vol"] = parse_rational(ns.vol)
        params["regime"] = ns.regime
    if cmd in ("spectrum", "heattrace"):
        params["family"] = ns.family
    if cmd in ("spectrum", "distinctness", "heattrace"):
        params["k"] = _positive(parse_rational(ns.k), "k")
        if (ns.v is None) == (ns.ratio is None):
            raise UsageError("specify exactly one of --v and --ratio")
        if ns.v is not None:
            params["v"] = float(_positive(parse_rational(ns.v), "v"))
        else:
            params["ratio"] = _positive(parse_rational(ns.ratio), "ratio")
    if cmd == "spectrum":
        params["cutoff"] = parse_rational(ns.cutoff)
        if params["cutoff"] < 0:
            raise UsageError("cutoff must be nonnegative")
    if cmd == "heattrace":
        params["t"] = ns.t
        if not ns.t > 0:
            raise UsageError("t must be positive")
        params["cutoff"] = ns.cutoff
    if cmd == "verify":
        params["samples"] = ns.samples
        params["seed"] = ns.seed
        params["step"] = parse_rational(ns.step)
        if ns.samples <= 0:
            raise UsageError("samples must be positive")

    return CommandRequest(command=cmd, params=params, fmt=ns.format)


def _quotient_spec(params: dict, family: int | None = None) -> QuotientSpec:
    fam = params.get("family", family)
    if "ratio" in params:
        return QuotientSpec.with_ratio(fam, params["k"], params["ratio"])
    return QuotientSpec(family=fam, k=params["k"], v=params["v"])


def run(request: CommandRequest) -> RunManifest:
    """Execute a validated request and wrap the result in a manifest."""
    start = time.monotonic()
    params = request.params
    cmd = request.command
    seed = params.get("seed")
    result: dict

    if cmd == "classify":
        if "lambda" in params:
            milnor = MilnorData.from_lambda(params["lambda"])
            result = {
                "lambda": [encode_scalar(v) for v in milnor.lam],
                "mu": [encode_scalar(v) for v in milnor.mu],
                "nu": [encode_scalar(v) for v in milnor.ricci()],
                "group": group_from_lambda(milnor.lam).value,
            }
        else:
            nu = params["nu"]
            result = {
                "nu": [encode_scalar(v) for v in nu],
                "group": group_from_ricci(nu).value,
            }
    elif cmd == "invariants":
        nu = params.get("nu") or ricci_from_lambda(params["lambda"])
        regime = _REGIMES[params["regime"]]
        if regime is None:
            regime = regime_for(nu)
        heat = heat_invariants(nu, params["vol"], regime)
        result = {
            "nu": [encode_scalar(v) for v in nu],
            "heat": heat.as_dict(),
            "b": b_invariants(nu, params["vol"]).as_dict(),
            "curvature": closed_form_invariants(nu).as_dict(),
        }
    elif cmd == "partners":
        regime = _REGIMES[params["regime"]]
        report = classify_isospectral_partners(params["nu"], params["vol"], regime)
        result = report.as_dict()
    elif cmd == "spectrum":
        spec = _quotient_spec(params)
        prefix = eigenvalue_set(spec, params["cutoff"])
        result = prefix.as_dict()
        result["volume"] = quotient_volume(spec)
    elif cmd == "distinctness":
        result = distinctness_report(
            params["k"], v=params.get("v"), ratio=params.get("ratio")
        ).as_dict()
    elif cmd == "heattrace":
        spec = _quotient_spec(params)
        trace = truncated_heat_trace(spec, params["t"], params.get("cutoff"))
        result = {
            "spec": spec.as_dict(),
            "t": params["t"],
            "cutoff": params.get("cutoff") or 40.0 / params["t"],
            "trace": trace,
        }
    elif cmd == "verify":
        result = run_verification(
            samples=params["samples"], seed=params["seed"], step=params["step"]
        )
    else:
        raise UsageError(f"unknown command {cmd!r}")

    return RunManifest(
        tool_version=__version__,
        command=cmd,
        parameters=_echo_params(params),
        seed=seed,
        wall_time_ms=(time.monotonic() - start) * 1000.0,
        result=result,
    )


def _echo_params(params: dict) -> dict:
    out = {}
    for key, value in params.items():
        if isinstance(value, tuple):
            out[key] = [encode_scalar(v) for v in value]
        else:
            out[key] = encode_scalar(value) if isinstance(value, Fraction) else value
    return out


def emit(manifest: RunManifest, fmt: str = "json") -> bytes:
    """Serialize a manifest: canonical json, csv (spectrum only), or text."""
    if fmt == "json":
        return (
            json.dumps(manifest.payload(), sort_keys=True, separators=(",", ":"))
            + "\n"
        ).encode()
    if fmt == "csv":
        if manifest.command != "spectrum":
            raise UsageError("csv output is only available for spectrum")
        spec = _quotient_spec(
            {
                "family": manifest.parameters["family"],
                "k": parse_rational(manifest.parameters["k"]),
                **(
                    {"ratio": parse_rational(manifest.parameters["ratio"])}
                    if manifest.parameters.get("ratio")
                    else {"v": manifest.parameters["v"]}
                ),
            }
        )
        prefix = eigenvalue_set(spec, parse_rational(str(manifest.parameters["cutoff"])))
        return ("\n".join(spectrum_csv_rows(prefix)) + "\n").encode()
    if fmt == "text":
        return _text_summary(manifest).encode()
    raise UsageError(f"unknown format {fmt!r}")


def _text_summary(manifest: RunManifest) -> str:
    lines = [f"geomspec {manifest.tool_version} :: {manifest.command}"]
    result = manifest.result
    if manifest.command == "classify":
        lines.append(f"group: {result['group']}")
        if "nu" in result:
            lines.append(f"nu: {result['nu']}")
    elif manifest.command == "invariants":
        heat = result["heat"]
        lines.append(
            f"a0={heat['a0']} a1={heat['a1']} a2={heat['a2']} a3={heat['a3']} "
            f"({heat['regime']})"
        )
        b = result["b"]
        lines.append(f"b1={b['b1']} b2={b['b2']} b3={b['b3']}")
    elif manifest.command == "partners":
        lines.append(f"conclusion: {result['conclusion']}")
        for cand in result["candidates"]:
            verdict = cand["status"] + (
                f" ({cand['reason']})" if cand["reason"] else f" as {cand['geometry']}"
            )
            lines.append(f"  P3={cand['p3']}: {verdict}")
    elif manifest.command == "spectrum":
        lines.append(f"volume: {result['volume']}")
        for entry in result["values"]:
            mult = entry["multiplicity"]
            lines.append(
                f"  {entry['value']}"
                + (f"  x{mult}" if mult is not None else "")
                + f"  from {entry['pairs']}"
            )
    elif manifest.command == "distinctness":
        lines.append(f"ok: {result['ok']}")
        for w in result["witnesses"]:
            lines.append(
                f"  families {w['families']}: witness {w['witness']} "
                f"in family {w['member_of']}"
            )
    elif manifest.command == "heattrace":
        lines.append(f"t={result['t']} trace={result['trace']}")
    elif manifest.command == "verify":
        lines.append(f"ok: {result['ok']}")
        lines.append(f"oracle equivalence: {result['oracle_equivalence']['status']}")
        lines.append(f"region check: {result['region_check']['status']}")
    return "\n".join(lines) + "\n"


def main(argv: list | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        request = parse_request(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        manifest = run(request)
        sys.stdout.buffer.write(emit(manifest, request.fmt))
        sys.stdout.buffer.flush()
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GeomspecError as exc:
        envelope = {"error": exc.code, "message": str(exc)}
        print(json.dumps(envelope, sort_keys=True, separators=(",", ":")))
        return 1
    if request.command == "verify" and not manifest.result.get("ok", False):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
