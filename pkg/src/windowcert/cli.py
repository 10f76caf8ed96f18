"""Command-line surface: windows, witness, reconstruct, certify, synth.

Exit codes are part of the contract:
  0  success (certify: zero verdict; witness: nonzero determinant)
  1  conclusive negative (certify: nonzero; witness: singular; reconstruct:
     degenerate flags)
  2  malformed input or invalid configuration
  3  inconclusive outcome / search exhaustion

All JSON documents are schema-validated before they are written.  Large
integers are serialized as strings; CSV holds decimal text.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import jsonschema

from .certify import Decision, pipeline
from .prony import prony_reconstruct
from .rankcert import certify_witness, search_witness
from .signal import RationalParams, WindowData, generate_sequence, window_sums
from .synth import case_a_fixture, case_b_fixture, collision_pair

log = logging.getLogger("windowcert")

_INT_STRING = {"type": "string", "pattern": "^-?[0-9]+$"}

WINDOWS_SCHEMA = {
    "type": "object",
    "required": ["W", "K", "sums"],
    "properties": {
        "W": {"type": "integer", "minimum": 1},
        "K": {"type": "integer", "minimum": 1},
        "sums": {"type": "array", "items": {"type": "number"}},
    },
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["d", "W", "p", "pi0", "window_sums", "jacobian", "det_mod_p", "nonzero", "exact"],
    "properties": {
        "d": {"type": "integer", "minimum": 1},
        "W": {"type": "integer", "minimum": 1},
        "p": {"type": "integer", "minimum": 2},
        "pi0": {"type": "array", "items": {"type": "integer"}},
        "window_sums": {"type": "array", "items": _INT_STRING},
        "jacobian": {"type": "array", "items": {"type": "array", "items": _INT_STRING}},
        "det_mod_p": {"type": "integer", "minimum": 0},
        "nonzero": {"type": "boolean"},
        "exact": {"type": "boolean"},
    },
}

MODEL_SCHEMA = {
    "type": "object",
    "required": ["nodes", "amplitudes", "char_coeffs", "flags"],
    "properties": {"flags": {"type": "array", "items": {"type": "string"}}},
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["decision", "flags"],
    "properties": {
        "decision": {"enum": ["zero", "nonzero", "inconclusive"]},
        "flags": {"type": "array", "items": {"type": "string"}},
    },
}


class CliError(Exception):
    """Bad input or configuration; mapped to exit code 2."""


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj: dict, schema: dict, out: str | None) -> None:
    jsonschema.validate(obj, schema)
    _write(json.dumps(obj, indent=2), out)


def _load_windows(path: str) -> WindowData:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    try:
        if path.endswith(".csv"):
            raise CliError(
                "CSV window input needs a block length; use the JSON format"
            )
        obj = json.loads(text)
        jsonschema.validate(obj, WINDOWS_SCHEMA)
        return WindowData(tuple(obj["sums"]), int(obj["W"]), int(obj["K"]))
    except (json.JSONDecodeError, jsonschema.ValidationError, ValueError) as exc:
        raise CliError(f"malformed windows file {path}: {exc}") from exc


def _parse_numbers(text: str, exact: bool):
    vals = [v for v in text.replace(",", " ").split() if v]
    if exact:
        try:
            return [int(v) for v in vals]
        except ValueError as exc:
            raise CliError(f"exact mode requires integer parameters: {exc}") from exc
    return [float(v) for v in vals]


def _load_params(args) -> RationalParams:
    if args.params_file:
        try:
            obj = json.loads(Path(args.params_file).read_text())
            initial = obj["initial"]
            recurrence = obj["recurrence"]
            d = int(obj.get("d", len(recurrence)))
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise CliError(f"malformed params file: {exc}") from exc
    elif args.pi0:
        vals = _parse_numbers(args.pi0, args.mode == "exact")
        if args.d is None:
            raise CliError("--pi0 requires -d")
        d = args.d
        if len(vals) != 2 * d + 1:
            raise CliError(f"--pi0 needs {2 * d + 1} values for d={d}")
        return RationalParams.from_vector(vals, d)
    else:
        raise CliError("provide --params-file or --pi0")
    if args.mode == "exact":
        initial = [int(v) for v in initial]
        recurrence = [int(v) for v in recurrence]
    try:
        return RationalParams(tuple(initial), tuple(recurrence), d)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def cmd_windows(args) -> int:
    if args.sequence_file:
        try:
            seq = [
                float(v)
                for v in Path(args.sequence_file).read_text().split()
                if v.strip()
            ]
        except (OSError, ValueError) as exc:
            raise CliError(f"malformed sequence file: {exc}") from exc
    else:
        params = _load_params(args)
        seq = generate_sequence(params, args.W * args.K - 1)
    try:
        data = window_sums(seq, args.W, args.K)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.out and args.out.endswith(".csv"):
        _write(data.to_csv(), args.out)
    else:
        _emit_json(json.loads(data.to_json()), WINDOWS_SCHEMA, args.out)
    return 0


def cmd_witness(args) -> int:
    try:
        if args.search:
            cert = search_witness(
                args.d,
                args.W,
                coordinate_bound=args.bound,
                p=args.prime,
                seed=args.seed,
                max_trials=args.max_trials,
            )
            if cert is None:
                log.warning("witness search exhausted after %d trials", args.max_trials)
                return 3
        else:
            if not args.pi0:
                raise CliError("provide --pi0 or --search")
            vals = _parse_numbers(args.pi0, exact=True)
            if len(vals) != 2 * args.d + 1:
                raise CliError(f"--pi0 needs {2 * args.d + 1} integers for d={args.d}")
            cert = certify_witness(
                RationalParams.from_vector(vals, args.d), args.d, args.W, args.prime
            )
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _emit_json(json.loads(cert.to_json()), CERTIFICATE_SCHEMA, args.out)
    return 0 if cert.nonzero else 1


def cmd_reconstruct(args) -> int:
    data = _load_windows(args.windows)
    if data.count < 2 * args.d:
        raise CliError(f"need at least 2d={2 * args.d} windows, got {data.count}")
    model = prony_reconstruct(data, args.d)
    _emit_json(json.loads(model.to_json()), MODEL_SCHEMA, args.out)
    return 1 if model.degenerate else 0


def cmd_certify(args) -> int:
    data = _load_windows(args.windows)
    try:
        report = pipeline(data, args.d, noise_eps=args.noise_eps)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _emit_json(json.loads(report.to_json()), REPORT_SCHEMA, args.out)
    return {Decision.ZERO: 0, Decision.NONZERO: 1, Decision.INCONCLUSIVE: 3}[
        report.decision
    ]


def cmd_synth(args) -> int:
    if args.what in ("case-a", "case-b"):
        fixture = case_a_fixture() if args.what == "case-a" else case_b_fixture()
        lines = ["k,true,observed"]
        for k, (t, o) in enumerate(zip(fixture.true_windows, fixture.observed_windows)):
            lines.append(f"{k},{t!r},{o!r}")
        _write("\n".join(lines) + "\n", args.out)
        return 0
    if args.what == "collision":
        fixture = case_a_fixture()
        y_in, y_out, big_n = collision_pair(
            fixture.mixture, args.d, args.W, args.K
        )
        out = args.out or "collision"
        for name, seq in (("in", y_in), ("out", y_out)):
            path = f"{out}.{name}.csv"
            Path(path).write_text("\n".join(repr(v) for v in seq) + "\n")
            log.info("wrote %s", path)
        sys.stdout.write(f"N={big_n}\n")
        return 0
    raise CliError(f"unknown synth target {args.what!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="windowcert",
        description="Certification of neutrality from W-block window sums",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["exact", "float", "modular"], default="exact")
    common.add_argument("--prime", type=int, default=10**9 + 7)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--config", help="JSON RunConfig file overriding flags")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("windows", parents=[common], help="compute window sums")
    p.add_argument("-d", type=int)
    p.add_argument("-W", type=int, required=True)
    p.add_argument("-K", type=int, required=True)
    p.add_argument("--params-file")
    p.add_argument("--pi0", help="flat parameter list y0..yd,q1..qd")
    p.add_argument("--sequence-file")
    p.set_defaults(func=cmd_windows)

    p = sub.add_parser("witness", parents=[common], help="rank certificate")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-W", type=int, required=True)
    p.add_argument("--pi0")
    p.add_argument("--search", action="store_true")
    p.add_argument("--bound", type=int, default=5)
    p.add_argument("--max-trials", type=int, default=100)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("reconstruct", parents=[common], help="Prony recovery")
    p.add_argument("windows")
    p.add_argument("-d", type=int, required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("certify", parents=[common], help="end-to-end decision")
    p.add_argument("windows")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--noise-eps", type=float, default=0.0)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("synth", parents=[common], help="fixtures and collisions")
    p.add_argument("what", help="case-a | case-b | collision")
    p.add_argument("-d", type=int, default=3)
    p.add_argument("-W", type=int, default=8)
    p.add_argument("-K", type=int, default=11)
    p.set_defaults(func=cmd_synth)

    return parser


def _apply_config(args) -> None:
    if not getattr(args, "config", None):
        return
    try:
        overrides = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"bad config file: {exc}") from exc
    for key, value in overrides.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr):
            setattr(args, attr, value)


def main(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("DEFECT_CERT_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except CliError as exc:
        log.error("%s", exc)
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
