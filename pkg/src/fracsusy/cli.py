"""Command-line front end.

Thin client over the driver layer: every subcommand builds a RunConfig,
calls the matching driver, and prints text or JSON.  Exit codes are the only
success channel: 0 all checks pass, 1 verification or runtime failure,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .drivers import (
    ConfigError,
    RunConfig,
    export_operator,
    run_coherent,
    run_spectrum,
    run_verify,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=int, default=3, help="grading order (integer >= 2)")
    parser.add_argument("--nmax", type=int, default=20, help="levels per grade")
    parser.add_argument("--guard", type=int, default=4, help="guard band for interior checks")
    parser.add_argument(
        "--kind",
        default="unit",
        choices=["unit", "calogero", "clambda", "nonlinear", "uqsl2"],
        help="structure-function family",
    )
    parser.add_argument("--c", type=float, default=0.0, help="constant for kind=calogero")
    parser.add_argument(
        "--cs", default="", help="comma-separated constants for kind=clambda"
    )
    parser.add_argument(
        "--realization",
        default="abstract",
        choices=["abstract", "kfermion", "uqsl2", "grassmann"],
    )
    parser.add_argument("--format", dest="fmt", default="text", choices=["text", "json"])
    parser.add_argument("--atol", type=float, default=1e-10)
    parser.add_argument("--rtol", type=float, default=1e-10)


def _config(args: argparse.Namespace) -> RunConfig:
    cs: tuple[float, ...] = ()
    if args.cs:
        try:
            cs = tuple(float(x) for x in args.cs.split(","))
        except ValueError as exc:
            raise ConfigError(f"could not parse --cs {args.cs!r}: {exc}") from exc
    return RunConfig(
        k=args.k,
        n_max=args.nmax,
        guard=args.guard,
        kind=args.kind,
        c=args.c,
        cs=cs,
        realization=args.realization,
        atol=args.atol,
        rtol=args.rtol,
        fmt=args.fmt,
    )


def _emit(payload: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload))
    else:
        print(text)


def cmd_verify(args: argparse.Namespace) -> int:
    config = _config(args)
    report = run_verify(config)
    _emit(report.to_dict(), report.to_text(), config.fmt)
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_spectrum(args: argparse.Namespace) -> int:
    config = _config(args)
    report = run_spectrum(config, args.variant, args.levels)
    _emit(report.to_dict(), report.to_text(), config.fmt)
    return EXIT_OK


def cmd_coherent(args: argparse.Namespace) -> int:
    config = _config(args)
    z = complex(args.z_re, args.z_im)
    try:
        result = run_coherent(config, z, args.t)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    if config.fmt == "json":
        print(json.dumps(result))
    else:
        ev = result["evolution"]
        lines = [
            f"coherent state z = {z}, t = {args.t}, k = {config.k}",
            f"eigenvector residual: {result['eigenvector_residual']:.3e}",
        ]
        for s, res in enumerate(ev["grade_residuals"]):
            lines.append(f"grade {s}: rotated-form residual {res:.3e}")
        phase = complex(*ev["grade0_extra_phase"])
        lines.append(
            f"grade 0 carries the extra phase {phase:.12f} "
            f"(agreement residual {ev['grade0_extra_phase_residual']:.3e})"
        )
        lines.append(f"evolution norm drift: {ev['unitarity_residual']:.3e}")
        print("\n".join(lines))
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    config = _config(args)
    payload = export_operator(config, args.operator)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(payload, fh)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_FAILURE
    else:
        print(json.dumps(payload))
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracsusy",
        description="Verify graded ladder-algebra identities, print spectra, "
        "inspect coherent-state evolution, and export operator matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the relation suite for one configuration")
    _add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_spec = sub.add_parser("spectrum", help="print energy levels with multiplicities")
    _add_common(p_spec)
    p_spec.add_argument(
        "--variant",
        default="oscillator",
        choices=["general", "nonlinear", "oscillator", "uqsl2"],
    )
    p_spec.add_argument("--levels", type=int, default=6)
    p_spec.set_defaults(func=cmd_spectrum)

    p_coh = sub.add_parser("coherent", help="coherent-state evolution report")
    _add_common(p_coh)
    p_coh.add_argument("--z-re", type=float, default=0.5)
    p_coh.add_argument("--z-im", type=float, default=0.0)
    p_coh.add_argument("--t", type=float, default=0.37)
    p_coh.set_defaults(func=cmd_coherent)

    p_exp = sub.add_parser("export", help="write one operator in matrix JSON form")
    _add_common(p_exp)
    p_exp.add_argument(
        "operator",
        help="Xminus, Xplus, N, K, Pi:<grade>, Qminus, Qplus, or H",
    )
    p_exp.add_argument("--out", default="", help="output path (default: stdout)")
    p_exp.set_defaults(func=cmd_export)

    p_srv = sub.add_parser("serve", help="start the HTTP service")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8000)
    p_srv.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
