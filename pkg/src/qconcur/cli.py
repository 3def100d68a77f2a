"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 domain error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path


from . import __version__
from .codes import verify_code
from .concurrence import all_concurrences, concurrence_R, concurrence_R_mixed, real_rho_shortcut
from .errors import BadSubset, KetParseError, NotReal, OddSubset, QConcurError, ZeroState
from .experiments import (
    comparison_csv,
    fmt,
    histogram_lines,
    run_compare,
    run_spectrum,
    run_sweep,
    sector_label,
    spectrum_csv,
    summarize_comparison,
    sweep_csv,
)
from .ketparse import (
    NormalizationWarning,
    format_amplitudes,
    format_ket,
    load_state,
    parse_density_matrix,
    parse_ket,
)
from .state import DEFAULT_MAX_QUBITS, qubit_subset, random_pure
from .wootters import wootters_concurrence

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4


class InputError(Exception):
    """Bad command-line input that maps to the parse-error exit code."""


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _table_value(x: float) -> str:
    # table cells always show a decimal point, e.g. 1.0 rather than 1
    s = fmt(x)
    return s if any(c in s for c in ".en") else s + ".0"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _info_stream(args):
    # keep stdout clean when the main output goes there
    return sys.stdout if args.out else sys.stderr


def _read_state(args, *, ket=None, file=None):
    ket = ket if ket is not None else getattr(args, "ket", None)
    file = file if file is not None else getattr(args, "file", None)
    if (ket is None) == (file is None):
        raise InputError("give exactly one of --ket or --file")
    if ket is not None:
        return parse_ket(ket, spin=args.spin, max_qubits=args.max_qubits)
    return load_state(file, spin=args.spin, max_qubits=args.max_qubits)


def _state_arg(args, value: str):
    # positional endpoint: a path if it exists, otherwise a ket expression
    if Path(value).is_file():
        return load_state(value, spin=args.spin, max_qubits=args.max_qubits)
    return parse_ket(value, spin=args.spin, max_qubits=args.max_qubits)


# -- subcommands ---------------------------------------------------------------

def cmd_concur(args) -> int:
    state = _read_state(args)
    n = state.num_qubits
    if args.only:
        sectors = [qubit_subset(s, n) for s in args.only]
        for s in sectors:
            if len(s) % 2:
                raise OddSubset(f"sector {s} has odd size {len(s)}")
            if args.k and len(s) not in args.k:
                raise BadSubset(f"sector {s} does not have a size in --k {args.k}")
        results = {len(s): {} for s in sectors}
        for s in sectors:
            results[len(s)][s] = concurrence_R(state, s)
    else:
        results = {k: dict(all_concurrences(state, k).entries) for k in (args.k or [2])}

    if args.format == "json":
        doc = {
            "n_qubits": n,
            "reports": [
                {"k": k, "sectors": [{"indices": list(s), "value": float(v)} for s, v in ent.items()]}
                for k, ent in results.items()
            ],
        }
        text = json.dumps(doc, indent=2) + "\n"
    elif args.format == "csv":
        text = "k,sector,c_r\n" + "".join(
            f"{k},{sector_label(s)},{fmt(v)}\n" for k, ent in results.items() for s, v in ent.items()
        )
    else:
        text = "".join(
            f"({''.join(map(str, s)) if n < 10 else sector_label(s)}): {_table_value(v)}\n"
            for ent in results.values() for s, v in ent.items()
        )
    _emit(text, args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    rows = run_compare(args.qubits, args.samples, args.seed, workers=args.workers, max_qubits=args.max_qubits)
    _emit(comparison_csv(rows), args.out)
    summary = summarize_comparison(rows)
    print("\n".join(summary.lines()), file=_info_stream(args))
    return EXIT_OK


def cmd_sweep(args) -> int:
    a = _state_arg(args, args.state_a)
    b = _state_arg(args, args.state_b)
    rows = run_sweep(a, b, args.steps, args.sector)
    _emit(sweep_csv(rows), args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    k = args.k[0] if args.k else 4
    if args.k and len(args.k) != 1:
        raise QConcurError("spectrum takes a single --k")
    sectors, values = run_spectrum(args.qubits, k, args.samples, args.seed, workers=args.workers,
                                   max_qubits=args.max_qubits)
    _emit(spectrum_csv(sectors, values), args.out)
    stream = _info_stream(args)
    print(f"{len(sectors)} sectors x {values.shape[0]} samples, k={k}", file=stream)
    print("\n".join(histogram_lines(values)), file=stream)
    return EXIT_OK


def cmd_codes(args) -> int:
    report = verify_code(args.code, args.k or [2, 4])
    if args.format == "table":
        lines = ["k  zero  unit  max_other"]
        lines += [f"{r.k:<2} {r.num_zero_sectors:5d} {r.num_unit_sectors:5d}  {fmt(r.max_other_value)}"
                  for r in report.summary]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(report.to_dict(), indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_mixed(args) -> int:
    rho = parse_density_matrix(Path(args.rho_file).read_text(encoding="utf-8"))
    wr = wootters_concurrence(rho)
    try:
        shortcut = real_rho_shortcut(rho)
    except NotReal:
        shortcut = None
    doc = {
        "c_r_mixed": concurrence_R_mixed(rho),
        "c_r_real_shortcut": shortcut,
        "wootters": {
            "lambdas": list(wr.lambdas),
            "c_w": wr.c_w,
            "c_w_unclamped": wr.c_w_unclamped,
            "eof": wr.eof,
        },
    }
    if args.format == "json":
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = (
            f"c_r_mixed: {fmt(doc['c_r_mixed'])}\n"
            f"c_r_real_shortcut: {fmt(shortcut) if shortcut is not None else 'n/a (complex rho)'}\n"
            f"lambdas: {' '.join(fmt(x) for x in wr.lambdas)}\n"
            f"c_w: {fmt(wr.c_w)}\n"
            f"c_w_unclamped: {fmt(wr.c_w_unclamped)}\n"
            f"eof: {fmt(wr.eof)}\n"
        )
    _emit(text, args.out)
    return EXIT_OK


def cmd_random(args) -> int:
    state = random_pure(args.qubits, args.seed, max_qubits=args.max_qubits)
    if args.format == "amplitudes":
        text = format_amplitudes(state)
    else:
        text = format_ket(state, spin=args.spin) + "\n"
    _emit(text, args.out)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS, help="largest state allowed (default 16)")
    common.add_argument("--out", help="write the main output here instead of stdout")
    common.add_argument("--spin", action="store_true", help="kets use u/d instead of 1/0")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=_u64, default=0)
    seeded.add_argument("--samples", type=int, default=1000)
    seeded.add_argument("--workers", type=int, default=1, help="worker processes; output does not depend on it")

    parser = argparse.ArgumentParser(prog="qconcur", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("concur", parents=[common], help="C_R of a state over qubit sectors")
    p.add_argument("--ket", help="ket expression, e.g. '1/sqrt(2)|00>+1/sqrt(2)|11>'")
    p.add_argument("--file", help="ket file or amplitude file")
    p.add_argument("--k", type=_int_list, help="sector sizes, e.g. 2,4 (default 2)")
    p.add_argument("--only", action="append", help="restrict to this sector, e.g. 1247 or 1,2,4,7; repeatable")
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.set_defaults(func=cmd_concur)

    p = sub.add_parser("compare", parents=[common, seeded], help="C_R vs C_W on random states (CSV)")
    p.add_argument("--qubits", type=int, default=4)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", parents=[common], help="C_R and C_W along (1-t)A + tB (CSV)")
    p.add_argument("state_a", help="ket/amplitude file or ket expression")
    p.add_argument("state_b", help="ket/amplitude file or ket expression")
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--sector", "--only", dest="sector", default="12")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("spectrum", parents=[common, seeded], help="all k-sector C_R of random states (CSV)")
    p.add_argument("--qubits", type=int, default=6)
    p.add_argument("--k", type=_int_list)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("codes", parents=[common], help="concurrence spectra of code states (JSON)")
    p.add_argument("code", help="shor0, shor1 or steane0")
    p.add_argument("--k", type=_int_list, help="sector sizes (default 2,4)")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_codes)

    p = sub.add_parser("mixed", parents=[common], help="C_R, C_W and EOF of a 4x4 density matrix file")
    p.add_argument("rho_file")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_mixed)

    p = sub.add_parser("random", parents=[common], help="emit a Haar-random state")
    p.add_argument("--qubits", type=int, default=4)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--format", choices=["ket", "amplitudes"], default="ket")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", NormalizationWarning)
            return args.func(args)
    except (KetParseError, InputError, ZeroState) as exc:
        print(f"qconcur: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except QConcurError as exc:
        print(f"qconcur: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"qconcur: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"qconcur: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
