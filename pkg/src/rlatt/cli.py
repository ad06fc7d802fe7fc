"""Command-line interface: enumeration, operator export, spectra, verification.

JSON is the canonical output format (floats keep full precision through the
shortest round-trip representation); CSV flattens complex numbers into
re/im columns.  Exit codes: 0 success, 1 verification or continuation
failure, 2 usage error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .coeffs import ModelParams, lattice_weight
from .eigenpoly import build_polynomials
from .errors import RlattError
from .operators import (
    build_antisymmetric_operator,
    build_hop_operator,
    build_symmetric_operator,
    symmetrize,
)
from .partitions import enumerate_lattice, weight, weight_to_partition
from .report import CHECK_NAMES, DEFAULT_TOLERANCES, REPORT_SCHEMA_VERSION, run_verification
from .spectral import joint_diagonalize, label_spectrum, sweep_spectra

__all__ = ["main", "entry", "RunConfig"]

USAGE_EXIT = 2
FAILURE_EXIT = 1


@dataclass
class RunConfig:
    n: int
    m: int
    g: float = 1.0
    p: float = 0.0
    p_sweep: tuple[float, float, float] | None = None  # (start, stop, step)
    seed: int = 0
    alpha_scale: float = 1.0
    tolerances: dict = field(default_factory=dict)
    out: str | None = None
    format: str = "json"

    def model_params(self) -> ModelParams:
        override = None
        if self.alpha_scale != 1.0:
            base = 2.0 * math.pi / ((self.n + 1) * self.g + self.m)
            override = self.alpha_scale * base
        return ModelParams(n=self.n, m=self.m, g=self.g, p=self.p, alpha_override=override)

    def sweep_values(self) -> list[float]:
        if self.p_sweep is None:
            return [self.p]
        start, stop, step = self.p_sweep
        if step <= 0:
            raise ValueError("p-sweep step must be positive")
        if not (abs(start) < 0.99 and abs(stop) < 0.99):
            raise ValueError("p-sweep endpoints must lie inside (-0.99, 0.99)")
        values = []
        count = 0
        direction = 1.0 if stop >= start else -1.0
        p = start
        while direction * (p - stop) <= 1e-12:
            values.append(round(p, 12))
            count += 1
            p = start + direction * count * step
        return values


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--n", type=int, help="number of parts bound")
    parser.add_argument("--m", type=int, help="part size bound")
    parser.add_argument("--g", type=float, help="coupling (default 1.0)")
    parser.add_argument("--p", type=float, help="elliptic nome (default 0.0)")
    parser.add_argument("--p-start", type=float, dest="p_start")
    parser.add_argument("--p-stop", type=float, dest="p_stop")
    parser.add_argument("--p-step", type=float, dest="p_step")
    parser.add_argument("--seed", type=int, help="seed for randomized pieces (default 0)")
    parser.add_argument("--alpha-scale", type=float, dest="alpha_scale",
                        help="scale the locked alpha (diagnostic; default 1.0)")
    parser.add_argument("--config", type=str, help="JSON config file; flags override it")
    parser.add_argument("--out", type=str, help="output path (stdout when omitted)")
    parser.add_argument("--format", choices=("json", "csv"), help="output format (default json)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rlatt", description=__doc__)
    parser.add_argument("--version", action="version", version=f"rlatt {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="ordered lattice basis with weights")
    _add_common(p_enum)

    p_op = sub.add_parser("operator", help="export one operator matrix")
    _add_common(p_op)
    p_op.add_argument("--r", type=int, required=True, help="operator order")
    p_op.add_argument("--kind", choices=("D", "C", "S", "M"), default="D",
                      help="hop / symmetric / antisymmetric / weight-conjugated")

    p_spec = sub.add_parser("spectrum", help="labeled joint spectrum (single p or sweep)")
    _add_common(p_spec)

    p_verify = sub.add_parser("verify", help="run all residual checks")
    _add_common(p_verify)
    for name in CHECK_NAMES:
        flag = "--tol-" + name
        p_verify.add_argument(flag, type=float, dest="tol_" + name.replace("-", "_"),
                              help=f"tolerance for {name} (default {DEFAULT_TOLERANCES[name]})")

    p_polys = sub.add_parser("polys", help="spectral polynomial coefficient table")
    _add_common(p_polys)
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """Merge config file, flags, and environment into a RunConfig.

    Precedence: flags override the config file; RLATT_SEED overrides both,
    for the seed only.
    """
    file_values = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as handle:
            file_values = json.load(handle)

    def pick(name, default):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_values:
            return file_values[name]
        return default

    n = pick("n", None)
    m = pick("m", None)
    if n is None or m is None:
        raise ValueError("both --n and --m are required (flags or config file)")
    sweep = None
    p_start = pick("p_start", None)
    p_stop = pick("p_stop", None)
    p_step = pick("p_step", None)
    if any(v is not None for v in (p_start, p_stop, p_step)):
        if None in (p_start, p_stop, p_step):
            raise ValueError("a p-sweep needs all of --p-start, --p-stop, --p-step")
        sweep = (float(p_start), float(p_stop), float(p_step))
    tolerances = dict(file_values.get("tolerances", {}))
    for name in CHECK_NAMES:
        value = getattr(args, "tol_" + name.replace("-", "_"), None)
        if value is not None:
            tolerances[name] = value
    for name, value in tolerances.items():
        if name not in DEFAULT_TOLERANCES:
            raise ValueError(f"unknown tolerance name {name!r}")
        if not value > 0:
            raise ValueError(f"tolerance {name} must be positive, got {value}")
    seed = pick("seed", 0)
    env_seed = os.environ.get("RLATT_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    return RunConfig(
        n=int(n),
        m=int(m),
        g=float(pick("g", 1.0)),
        p=float(pick("p", 0.0)),
        p_sweep=sweep,
        seed=int(seed),
        alpha_scale=float(pick("alpha_scale", 1.0)),
        tolerances=tolerances,
        out=pick("out", None),
        format=pick("format", "json"),
    )


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _to_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_text(header: list, rows: list) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def cmd_enumerate(config: RunConfig) -> int:
    params = config.model_params()
    basis = enumerate_lattice(config.n, config.m)
    records = [
        {
            "index": i,
            "partition": list(lam),
            "weight": weight(lam),
            "delta": lattice_weight(lam, params),
        }
        for i, lam in enumerate(basis.order)
    ]
    if config.format == "json":
        payload = {
            "schema": "rlatt/basis",
            "n": config.n,
            "m": config.m,
            "g": config.g,
            "p": config.p,
            "size": len(basis),
            "records": records,
        }
        _emit(_to_json(payload), config.out)
    else:
        rows = [[r["index"], " ".join(map(str, r["partition"])), r["weight"], repr(r["delta"])] for r in records]
        _emit(_csv_text(["index", "partition", "weight", "delta"], rows), config.out)
    return 0


def _build_operator(config: RunConfig, r: int, kind: str):
    params = config.model_params()
    if kind == "D":
        return build_hop_operator(r, params)
    if kind == "C":
        return build_symmetric_operator(r, params)
    if kind == "S":
        return build_antisymmetric_operator(r, params)
    return symmetrize(build_hop_operator(r, params), params)


def cmd_operator(config: RunConfig, r: int, kind: str) -> int:
    op = _build_operator(config, r, kind)
    mat = op.matrix
    is_complex = np.iscomplexobj(mat)
    if config.format == "json":
        entries = []
        for value in mat.flat:
            if is_complex:
                entries.append([float(value.real), float(value.imag)])
            else:
                entries.append(float(value))
        payload = {
            "schema": "rlatt/operator",
            "kind": op.kind,
            "r": r,
            "n": config.n,
            "m": config.m,
            "g": config.g,
            "p": config.p,
            "size": int(mat.shape[0]),
            "dtype": "complex" if is_complex else "real",
            "entries": entries,
        }
        _emit(_to_json(payload), config.out)
    else:
        rows = []
        for i in range(mat.shape[0]):
            for j in range(mat.shape[1]):
                value = complex(mat[i, j])
                rows.append([i, j, repr(value.real), repr(value.imag)])
        _emit(_csv_text(["i", "j", "re", "im"], rows), config.out)
    return 0


def _spectrum_records(spectrum) -> list:
    records = []
    for datum in spectrum.data:
        records.append(
            {
                "nu": list(datum.label),
                "e": [[float(e.real), float(e.imag)] for e in datum.eigenvalues],
                "norm_hat": float(datum.norm_hat),
                "residual": float(datum.residual),
            }
        )
    return records


def cmd_spectrum(config: RunConfig) -> int:
    params = config.model_params()
    values = config.sweep_values()
    if len(values) == 1:
        point = replace(params, p=values[0])
        spectra = [label_spectrum(joint_diagonalize(point, seed=config.seed), seed=config.seed)]
    else:
        spectra = sweep_spectra(params, values, seed=config.seed)
    points = [
        {"p": float(p), "records": _spectrum_records(s)} for p, s in zip(values, spectra)
    ]
    if config.format == "json":
        payload = {
            "schema": "rlatt/spectrum",
            "n": config.n,
            "m": config.m,
            "g": config.g,
            "seed": config.seed,
            "points": points,
        }
        _emit(_to_json(payload), config.out)
    else:
        header = ["p", "nu", "norm_hat", "residual"]
        for r in range(1, config.n + 1):
            header += [f"e{r}_re", f"e{r}_im"]
        rows = []
        for point in points:
            for record in point["records"]:
                row = [
                    repr(point["p"]),
                    " ".join(map(str, record["nu"])),
                    repr(record["norm_hat"]),
                    repr(record["residual"]),
                ]
                for e_re, e_im in record["e"]:
                    row += [repr(e_re), repr(e_im)]
                rows.append(row)
        _emit(_csv_text(header, rows), config.out)
    return 0


def cmd_verify(config: RunConfig) -> int:
    if config.p_sweep is not None:
        raise ValueError("verify runs at a single --p, not a sweep")
    report = run_verification(config.model_params(), tolerances=config.tolerances, seed=config.seed)
    payload = report.as_dict()
    if config.format == "json":
        _emit(_to_json(payload), config.out)
    else:
        rows = [
            [c["name"], "" if c["residual"] is None else repr(c["residual"]),
             repr(c["tolerance"]), c["passed"], repr(c["seconds"]), c["error"] or ""]
            for c in payload["checks"]
        ]
        _emit(_csv_text(["name", "residual", "tolerance", "passed", "seconds", "error"], rows), config.out)
    return 0 if report.passed else FAILURE_EXIT


def cmd_polys(config: RunConfig) -> int:
    params = config.model_params()
    basis = enumerate_lattice(config.n, config.m)
    polys = build_polynomials(params, basis)
    triples = []
    for mu in basis.order:
        poly = polys[mu]
        entries = sorted(
            ((weight_to_partition(key), value) for key, value in poly.coeffs.items()),
            key=lambda item: basis.index[item[0]],
        )
        for nu, value in entries:
            triples.append({"mu": list(mu), "nu": list(nu), "u": float(value)})
    if config.format == "json":
        payload = {
            "schema": "rlatt/polys",
            "n": config.n,
            "m": config.m,
            "g": config.g,
            "p": config.p,
            "triples": triples,
        }
        _emit(_to_json(payload), config.out)
    else:
        rows = [
            [" ".join(map(str, t["mu"])), " ".join(map(str, t["nu"])), repr(t["u"])]
            for t in triples
        ]
        _emit(_csv_text(["mu", "nu", "u"], rows), config.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"rlatt: {exc}", file=sys.stderr)
        return USAGE_EXIT
    try:
        if args.command == "enumerate":
            return cmd_enumerate(config)
        if args.command == "operator":
            return cmd_operator(config, args.r, args.kind)
        if args.command == "spectrum":
            return cmd_spectrum(config)
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "polys":
            return cmd_polys(config)
    except ValueError as exc:
        print(f"rlatt: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except RlattError as exc:
        print(f"rlatt: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILURE_EXIT
    raise AssertionError(f"unhandled command {args.command}")


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
