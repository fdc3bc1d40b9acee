"""Command line front end.

Subcommands: config, lattice, check, scd, tables, verify-paper.  Output is
deterministic for fixed arguments; nothing is written to stderr on success.

Exit codes: 0 success, 1 a requested check or comparison failed, 2 argument
errors, 3 file or parse errors, 4 size cap exceeded, 5 chain assembly
failure.  The enumeration point cap and the duality search cap come from
--enum-cap / --duality-cap, which default to the NCLAT_ENUM_CAP and
NCLAT_DUALITY_CAP environment variables when set.
"""

import argparse
import json
import os
import sys

from .acceptance import run_criteria
from .enumeration import (
    CountTable,
    brute_t_sequence,
    brute_table,
    s_table,
    series_T,
    series_table,
    t_closed,
    t_sequence,
    u_table,
    v_table,
)
from .errors import (
    AssemblyFailure,
    InvalidInput,
    NclatError,
    TooLarge,
)
from .fixtures import BUILTIN, load_builtin
from .geometry import (
    FAMILIES,
    config_from_json,
    config_to_json,
    standard_config,
)
from .partition import DEFAULT_ENUM_CAP
from .poset import (
    DEFAULT_DUALITY_CAP,
    build_nc_poset,
    gradedness,
    is_self_dual,
    lattice_check,
    poset_to_dot,
    poset_to_json_obj,
    rank_vector,
)
from .scd import scd_S, scd_T, scd_U, scd_V, verify_scd

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_FILE = 3
EXIT_TOO_LARGE = 4
EXIT_ASSEMBLY = 5

CHECK_PROPERTIES = ("graded", "rank-symmetric", "self-dual", "lattice")


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _env_int(var: str, fallback: int) -> int:
    raw = os.environ.get(var)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise _CliError(EXIT_USAGE, f"{var} must be an integer, got {raw!r}")


# ---------------------------------------------------------------------------
# configuration sources

def _add_source_args(sub):
    sub.add_argument("family", nargs="?", help="standard family: P Q T U V S")
    sub.add_argument("m", nargs="?", type=int, help="first size parameter")
    sub.add_argument("n", nargs="?", type=int, help="second size parameter (U/V/S)")
    sub.add_argument("--input", help="read the configuration from a JSON file")
    sub.add_argument(
        "--fixture",
        choices=BUILTIN,
        help="use a bundled example configuration",
    )


def _load_config(args):
    given = [args.family is not None, args.input is not None, args.fixture is not None]
    if sum(given) != 1:
        raise _CliError(
            EXIT_USAGE, "give exactly one of: a family with sizes, --input, --fixture"
        )
    if args.input is not None:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _CliError(EXIT_FILE, f"cannot read {args.input}: {exc}")
        try:
            return config_from_json(text)
        except NclatError as exc:
            raise _CliError(EXIT_FILE, f"{type(exc).__name__}: {exc}")
    if args.fixture is not None:
        return load_builtin(args.fixture)
    fam = args.family.upper()
    if fam not in FAMILIES:
        raise _CliError(
            EXIT_USAGE, f"unknown family {args.family!r}; choose from {' '.join(FAMILIES)}"
        )
    try:
        if fam in ("P", "Q", "T"):
            if args.m is None or args.n is not None:
                raise InvalidInput(f"family {fam} takes exactly one size parameter")
            return standard_config(fam, args.m)
        if args.m is None or args.n is None:
            raise InvalidInput(f"family {fam} takes two size parameters")
        return standard_config(fam, args.m, args.n)
    except NclatError as exc:
        raise _CliError(EXIT_USAGE, f"{type(exc).__name__}: {exc}")


def _source_name(args) -> str:
    if args.input is not None:
        base = os.path.basename(args.input)
        return base[:-5] if base.endswith(".json") else base
    if args.fixture is not None:
        return args.fixture
    parts = [args.family.upper(), str(args.m)]
    if args.n is not None:
        parts.append(str(args.n))
    return "_".join(parts)


def _dump(obj, pretty: bool) -> str:
    if pretty:
        return json.dumps(obj, indent=2)
    return json.dumps(obj, separators=(",", ":"))


# ---------------------------------------------------------------------------
# subcommands

def cmd_config(args) -> int:
    cfg = _load_config(args)
    print(config_to_json(cfg))
    return EXIT_OK


def cmd_lattice(args) -> int:
    cfg = _load_config(args)
    poset = build_nc_poset(cfg, cap=args.enum_cap)
    if args.format == "dot":
        sys.stdout.write(poset_to_dot(poset, title=_source_name(args)))
    else:
        print(_dump(poset_to_json_obj(poset), args.pretty))
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = _load_config(args)
    props = [p.strip() for p in args.properties.split(",") if p.strip()]
    for p in props:
        if p not in CHECK_PROPERTIES:
            raise _CliError(
                EXIT_USAGE,
                f"unknown property {p!r}; choose from {', '.join(CHECK_PROPERTIES)}",
            )
    poset = build_nc_poset(cfg, cap=args.enum_cap)
    all_ok = True
    for prop in CHECK_PROPERTIES:
        if prop not in props:
            continue
        if prop == "graded":
            info = gradedness(poset)
            ok = info.is_graded
            extra = (
                ""
                if ok
                else f" witness cover {info.witness[0]} -> {info.witness[1]}"
            )
        elif prop == "rank-symmetric":
            info = gradedness(poset)
            if not info.is_graded:
                ok = False
                extra = " not graded, so no rank vector"
            else:
                vec = rank_vector(poset)
                ok = vec == vec[::-1]
                extra = f" rank vector {list(vec)}"
        elif prop == "self-dual":
            ok = is_self_dual(poset, cap=args.duality_cap)
            extra = ""
        else:
            ok, detail = lattice_check(poset, cap=args.duality_cap)
            extra = "" if ok else f" {detail}"
        all_ok = all_ok and ok
        print(f"{prop}: {'PASS' if ok else 'FAIL'}{extra}")
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_scd(args) -> int:
    fam = args.family.upper()
    builders = {"T": scd_T, "U": scd_U, "V": scd_V, "S": scd_S}
    if fam not in builders:
        raise _CliError(EXIT_USAGE, "scd supports families T, U, V, S")
    try:
        if fam == "T":
            if args.n is not None:
                raise InvalidInput("family T takes exactly one size parameter")
            chains = scd_T(args.m)
            cfg = standard_config("T", args.m)
        else:
            if args.n is None:
                raise InvalidInput(f"family {fam} takes two size parameters")
            chains = builders[fam](args.m, args.n)
            cfg = standard_config(fam, args.m, args.n)
    except (InvalidInput, TooLarge, AssemblyFailure):
        raise
    except NclatError as exc:
        raise _CliError(EXIT_USAGE, f"{type(exc).__name__}: {exc}")
    poset = build_nc_poset(cfg, cap=args.enum_cap)
    res = verify_scd(poset, chains)
    report = {
        "family": fam,
        "m": args.m,
        "n": args.n,
        "verified": res.ok,
        "reason": res.reason,
        "chain_count": res.chain_count,
        "element_count": res.element_count,
        "chain_lengths": {str(k): res.lengths[k] for k in sorted(res.lengths)},
        "chains": [[pi.to_obj() for pi in chain] for chain in chains],
    }
    print(_dump(report, args.pretty))
    return EXIT_OK if res.ok else EXIT_FAIL


def _emit_rows(family: str, source: str, rows) -> None:
    print(f"# leg: {source}")
    if family == "T":
        row = rows[0]
        print("n," + ",".join(str(i) for i in range(len(row))))
        print("t," + ",".join(str(v) for v in row))
        return
    sys.stdout.write(CountTable(family, source, rows).to_csv())


def cmd_tables(args) -> int:
    fam = args.family.upper()
    legs = [s.strip() for s in args.legs.split(",") if s.strip()]
    if fam == "T":
        if args.n is not None:
            raise _CliError(EXIT_USAGE, "family T takes a single table extent")
        allowed = ("recurrence", "closed", "series", "brute")
        max_n = args.m
        makers = {
            "recurrence": lambda: [t_sequence(max_n)],
            "closed": lambda: [
                t_sequence(min(1, max_n))
                + [t_closed(i) for i in range(2, max_n + 1)]
            ],
            "series": lambda: [
                [series_T(max_n).coefficient(i) for i in range(max_n + 1)]
            ],
            "brute": lambda: [brute_t_sequence(max_n, cap=args.enum_cap)],
        }
    elif fam in ("U", "V", "S"):
        if args.n is None:
            raise _CliError(EXIT_USAGE, f"family {fam} takes two table extents")
        allowed = ("recurrence", "series", "brute")
        rec = {"U": u_table, "V": v_table, "S": s_table}[fam]
        makers = {
            "recurrence": lambda: rec(args.m, args.n),
            "series": lambda: series_table(fam, args.m, args.n),
            "brute": lambda: brute_table(fam, args.m, args.n, cap=args.enum_cap),
        }
    else:
        raise _CliError(EXIT_USAGE, "tables supports families T, U, V, S")
    for leg in legs:
        if leg not in allowed:
            raise _CliError(
                EXIT_USAGE, f"unknown leg {leg!r} for {fam}; choose from {allowed}"
            )
    if not legs:
        raise _CliError(EXIT_USAGE, "no legs requested")
    computed = {leg: makers[leg]() for leg in legs}
    for leg in legs:
        _emit_rows(fam, leg, computed[leg])
    base = legs[0]
    mismatches = []
    for other in legs[1:]:
        for m, (ra, rb) in enumerate(zip(computed[base], computed[other])):
            for n, (a, b) in enumerate(zip(ra, rb)):
                if a != b:
                    mismatches.append((base, other, m, n, a, b))
    if mismatches:
        for base, other, m, n, a, b in mismatches:
            print(f"mismatch {base} vs {other} at m={m} n={n}: {a} != {b}")
        return EXIT_FAIL
    if len(legs) > 1:
        print(f"cross-check: all {len(legs)} legs agree")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    only = None
    if args.only:
        only = [tok for tok in args.only.split(",")]
    try:
        results = run_criteria(only=only)
    except InvalidInput as exc:
        raise _CliError(EXIT_USAGE, str(exc))
    for res in results:
        print(res.line())
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser plumbing

def build_parser() -> argparse.ArgumentParser:
    enum_cap = _env_int("NCLAT_ENUM_CAP", DEFAULT_ENUM_CAP)
    duality_cap = _env_int("NCLAT_DUALITY_CAP", DEFAULT_DUALITY_CAP)

    parser = argparse.ArgumentParser(
        prog="nclat",
        description="Noncrossing partition lattices of planar configurations.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("config", help="emit a configuration as JSON")
    _add_source_args(p)
    p.set_defaults(func=cmd_config)

    p = subs.add_parser("lattice", help="export the lattice (DOT or JSON)")
    _add_source_args(p)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    p.add_argument("--enum-cap", type=int, default=enum_cap)
    p.set_defaults(func=cmd_lattice)

    p = subs.add_parser("check", help="check order properties, one PASS/FAIL per line")
    _add_source_args(p)
    p.add_argument(
        "--properties",
        default=",".join(CHECK_PROPERTIES),
        help="comma list from: " + ", ".join(CHECK_PROPERTIES),
    )
    p.add_argument("--enum-cap", type=int, default=enum_cap)
    p.add_argument("--duality-cap", type=int, default=duality_cap)
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("scd", help="build and verify a symmetric chain decomposition")
    p.add_argument("family", help="family: T U V S")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    p.add_argument("--enum-cap", type=int, default=enum_cap)
    p.set_defaults(func=cmd_scd)

    p = subs.add_parser("tables", help="emit count tables as CSV and cross-check legs")
    p.add_argument("family", help="family: T U V S")
    p.add_argument("m", type=int, help="row extent (or sequence extent for T)")
    p.add_argument("n", type=int, nargs="?", help="column extent")
    p.add_argument(
        "--legs",
        default="recurrence,series,brute",
        help="comma list from: recurrence, series, brute (plus closed for T)",
    )
    p.add_argument("--enum-cap", type=int, default=enum_cap)
    p.set_defaults(func=cmd_tables)

    p = subs.add_parser("verify-paper", help="run the acceptance criteria suite")
    p.add_argument(
        "--only",
        help="comma list of criterion numbers or name prefixes (e.g. tables,9)",
    )
    p.set_defaults(func=cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except TooLarge as exc:
        print(f"error: TooLarge: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except AssemblyFailure as exc:
        print(f"error: AssemblyFailure: {exc}", file=sys.stderr)
        return EXIT_ASSEMBLY
    except NclatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
