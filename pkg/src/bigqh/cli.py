"""Command-line front end.

Subcommands mirror the pipeline: gw-table, matrix, discriminant, classify,
spectrum, sweep, and serve (the read-only HTTP service backing the browser
explorer).  Output is deterministic for identical arguments; JSON bodies are
rendered by the same serializer the service uses, so the two are
byte-identical.  Exit codes: 0 success, 2 usage error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from .dubrovin import TruncationExceedsPotentialError, matrix_text
from .potential import WDVVSolveError, table_text
from .series import format_qseries
from .session import BULK_CYCLES, DEFAULT_ALPHA, Session, shared_session
from .spectral import ConvergenceFailure, SpectrumSample, match_trails

COMPUTATION_ERRORS = (WDVVSolveError, TruncationExceedsPotentialError, ConvergenceFailure)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COMPUTATION = 3


def render_json(payload) -> str:
    """Canonical JSON: sorted keys, compact separators (shared with the service)."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def parse_complex(text: str) -> complex:
    """Accept '1.5+3i', '1.5+3j', '2i', '0.5', or 're,im'."""
    s = text.strip().replace(" ", "")
    if "," in s:
        re_s, im_s = s.split(",", 1)
        return complex(float(re_s), float(im_s))
    s = s.replace("i", "j").replace("J", "j")
    try:
        return complex(s)
    except ValueError as exc:
        raise ValueError(f"cannot parse complex number {text!r}") from exc


def parse_path(text: str) -> List[complex]:
    points = [parse_complex(chunk) for chunk in text.split(";") if chunk.strip()]
    if not points:
        raise ValueError("path is empty")
    return points


def _complex_text(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def _spectrum_text(sample: SpectrumSample) -> str:
    lines = [f"cycle = {sample.cycle if sample.cycle else '-'}",
             f"t = {_complex_text(sample.t)}",
             f"q = {_complex_text(sample.q)}",
             f"alpha = {sample.alpha}",
             "eigenvalues (sorted by re, im):"]
    lines += [f"  {_complex_text(ev)}" for ev in sample.eigenvalues]
    lines.append(f"residual = {sample.residual:.3e}")
    return "\n".join(lines)


def _sweep_csv(result) -> str:
    rows = ["frame,cycle,t_re,t_im,eig_index,re,im,residual"]
    ref = result.reference
    for k, ev in enumerate(ref.eigenvalues):
        rows.append(f"-1,{ref.cycle},{ref.t.real:.12g},{ref.t.imag:.12g},{k},"
                    f"{ev.real:.17g},{ev.imag:.17g},{ref.residual:.3e}")
    trails = match_trails(result.samples)
    for frame, (sample, evs) in enumerate(zip(result.samples, trails)):
        for k, ev in enumerate(evs):
            rows.append(f"{frame},{sample.cycle},{sample.t.real:.12g},{sample.t.imag:.12g},"
                        f"{k},{ev.real:.17g},{ev.imag:.17g},{sample.residual:.3e}")
    return "\n".join(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bigqh",
        description="Big quantum cohomology of Gr(2,4): curve-count tables, "
                    "Dubrovin matrices, exact discriminants, spectra.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, cycle_required=False, formats=("json", "text")):
        p.add_argument("--cycle", required=cycle_required,
                       help=f"bulk Schubert cycle, one of: {', '.join(BULK_CYCLES)}")
        p.add_argument("--alpha", type=int, default=DEFAULT_ALPHA,
                       help="finite-energy truncation order (default 2)")
        p.add_argument("--format", choices=formats, default="text")

    p = sub.add_parser("gw-table", help="solve the curve counts from associativity")
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("matrix", help="Dubrovin operator matrix (symbolic)")
    add_common(p)

    p = sub.add_parser("discriminant", help="exact discriminant of a one-parameter family")
    add_common(p, cycle_required=True)

    p = sub.add_parser("classify", help="spectral-simplicity verdict of a family")
    add_common(p, cycle_required=True)

    p = sub.add_parser("spectrum", help="numeric eigenvalues at a parameter point")
    add_common(p)
    p.add_argument("--t", default="0", help="complex bulk coordinate, e.g. 0.5+1i")
    p.add_argument("--q", default="1", help="complex Novikov value (default 1)")

    p = sub.add_parser("sweep", help="eigenvalues along a path of bulk parameters")
    add_common(p, cycle_required=True, formats=("json", "text", "csv"))
    p.add_argument("--path", required=True,
                   help="semicolon-separated complex points, e.g. '0.5+1i;1+2i'")
    p.add_argument("--q", default="1", help="complex Novikov value (default 1)")

    p = sub.add_parser("serve", help="run the read-only HTTP service")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", default=None,
                   help="directory of explorer assets to serve at /")
    return parser


def run(argv: Optional[Sequence[str]] = None, session: Optional[Session] = None,
        stdout=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    ses = session if session is not None else shared_session()

    def emit(text: str):
        out.write(text)
        if not text.endswith("\n"):
            out.write("\n")

    try:
        if args.command == "gw-table":
            if args.max_degree < 1:
                parser.error("--max-degree must be >= 1")
            table = ses.table(args.max_degree)
            emit(render_json(table.to_json()) if args.format == "json"
                 else table_text(table))
            return EXIT_OK

        if args.command == "matrix":
            if args.alpha < 0:
                parser.error("--alpha must be >= 0")
            m = ses.matrix(args.alpha, args.cycle)
            if args.format == "json":
                payload = m.to_json()
                payload["cycle"] = args.cycle
                emit(render_json(payload))
            else:
                head = f"alpha={args.alpha} cycle={args.cycle or 'all symbolic'}"
                emit(head + "\n" + matrix_text(m))
            return EXIT_OK

        if args.command in ("discriminant", "classify"):
            if args.alpha < 0:
                parser.error("--alpha must be >= 0")
            verdict = ses.classify(args.cycle, args.alpha)
            if args.format == "json":
                payload = verdict.to_json()
                payload.update({"cycle": args.cycle, "alpha": args.alpha})
                emit(render_json(payload))
            else:
                disc = verdict.witness
                lines = [f"cycle = {args.cycle}", f"alpha = {args.alpha}"]
                if args.command == "discriminant":
                    val = "0" if disc.value.is_zero() else format_qseries(disc.value)
                    lines.append(f"discriminant = {val}")
                    lines.append("valuation = " +
                                 ("inf (zero discriminant)" if disc.value.is_zero()
                                  else str(disc.valuation)))
                lines.append(f"verdict = {verdict.verdict.value}")
                lines.append(f"reading: {verdict.interpretation(args.alpha)}")
                emit("\n".join(lines))
            return EXIT_OK

        if args.command == "spectrum":
            if args.alpha < 0:
                parser.error("--alpha must be >= 0")
            try:
                t = parse_complex(args.t)
                q = parse_complex(args.q)
            except ValueError as exc:
                parser.error(str(exc))
            if args.cycle is None and t != 0:
                parser.error("--cycle is required when --t is nonzero")
            sample = ses.spectrum(args.cycle, t, q, args.alpha)
            emit(render_json(sample.to_json()) if args.format == "json"
                 else _spectrum_text(sample))
            return EXIT_OK

        if args.command == "sweep":
            if args.alpha < 0:
                parser.error("--alpha must be >= 0")
            try:
                path = parse_path(args.path)
                q = parse_complex(args.q)
            except ValueError as exc:
                parser.error(str(exc))
            result = ses.sweep(args.cycle, path, q, args.alpha)
            if args.format == "json":
                emit(render_json(result.to_json()))
            elif args.format == "csv":
                emit(_sweep_csv(result))
            else:
                blocks = [_spectrum_text(result.reference)]
                blocks += [_spectrum_text(s) for s in result.samples]
                emit("\n\n".join(blocks))
            return EXIT_OK

        if args.command == "serve":
            from .service import serve
            port = int(os.environ.get("DUBROVIN_PORT", args.port))
            serve(host=args.host, port=port, session=ses, static_dir=args.static)
            return EXIT_OK

    except COMPUTATION_ERRORS as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except ValueError as exc:
        parser.error(str(exc))
    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
