"""Command-line front end.

Subcommands cover enumeration (count, enumerate, klein), class groups
(classgroup), the Dirichlet series with its global identity (series), and
the named verification suites (verify).  Output is JSON by default, with
CSV for the flat tables and a plain text mode.  Exit codes: 0 success,
1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import lattice, mds, qform, repnum, suites
from .klein import klein_map
from .repnum import OracleMismatchError

DEFAULT_DISC_BOUND = 500
DEFAULT_SERIES_DMAX = 200
DEFAULT_PRIME_CUTOFF = 10 ** 4

# flags each suite understands; anything else is silently left at the
# suite's own default
_SUITE_KW = {
    "r24": ("dmax",),
    "klein": ("nmax",),
    "orth": ("nmax",),
    "local-identity": ("order",),
    "p-local": ("fmax",),
    "class-number": ("dmax",),
    "l-value": ("dmax",),
    "gauss-genus": ("nmax",),
    "comp-ort": ("nmax",),
    "pair-genus": ("nmax",),
    "genus-structure": ("nmax",),
    "global-identity": ("w", "dmax", "prime_cutoff"),
}

_PLUCKER_COLS = ("p12", "p13", "p14", "p23", "p24", "p34")


@dataclass
class RunConfig:
    """One resolved invocation: command, bounds, and output routing."""

    command: str
    disc: int | None = None
    dmax: int | None = None
    nmax: int | None = None
    fmax: int | None = None
    order: int | None = None
    prime_cutoff: int | None = None
    w: float | None = None
    suite: str | None = None
    fmt: str = "json"
    out: str | None = None

    def __post_init__(self):
        for name in ("dmax", "nmax", "fmax", "order", "prime_cutoff"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.fmt not in ("json", "csv", "text"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.suite is not None and self.suite != "all" \
                and self.suite not in suites.SUITES:
            known = ", ".join(sorted(suites.SUITES) + ["all"])
            raise ValueError(f"unknown suite {self.suite!r}; choose from {known}")


def _disc_bound_from_env() -> int:
    raw = os.environ.get("PLANES_MAX_DISC")
    if raw is None:
        return DEFAULT_DISC_BOUND
    try:
        bound = int(raw)
    except ValueError:
        raise ValueError(f"PLANES_MAX_DISC must be an integer, got {raw!r}")
    if bound < 1:
        raise ValueError("PLANES_MAX_DISC must be positive")
    return bound


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"),
                        default="json", help="output format (default json)")
    common.add_argument("--out", metavar="FILE", default=None,
                        help="write the report to FILE instead of stdout")

    parser = argparse.ArgumentParser(
        prog="planes",
        description="Primitive rank-2 sublattices of Z^4: plane counts, "
                    "Klein pairs, class groups, and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("count", parents=[common],
                       help="count planes of norm D by formula and by oracle")
    p.add_argument("--disc", type=int, required=True, metavar="D",
                   help="positive plane norm (lattice discriminant is -4D)")

    p = sub.add_parser("enumerate", parents=[common],
                       help="list all primitive planes of norm D")
    p.add_argument("--disc", type=int, required=True, metavar="D")

    p = sub.add_parser("klein", parents=[common],
                       help="Klein pairs of all planes of norm D")
    p.add_argument("--disc", type=int, required=True, metavar="D")

    p = sub.add_parser("classgroup", parents=[common],
                       help="form class group of a negative discriminant")
    p.add_argument("--disc", type=int, required=True, metavar="D",
                   help="negative discriminant, e.g. -20")

    p = sub.add_parser("series", parents=[common],
                       help="Dirichlet coefficients and the global identity")
    p.add_argument("--dmax", type=int, default=DEFAULT_SERIES_DMAX, metavar="N")
    p.add_argument("--w", type=float, default=4.0,
                   help="evaluation point, must exceed 2 (default 4)")
    p.add_argument("--prime-cutoff", dest="prime_cutoff", type=int,
                   default=DEFAULT_PRIME_CUTOFF, metavar="P")

    p = sub.add_parser("verify", parents=[common],
                       help="run one verification suite, or all of them")
    p.add_argument("suite", choices=sorted(suites.SUITES) + ["all"],
                   metavar="SUITE",
                   help="one of: " + ", ".join(sorted(suites.SUITES) + ["all"]))
    p.add_argument("--dmax", type=int, default=None, metavar="N")
    p.add_argument("--nmax", type=int, default=None, metavar="N")
    p.add_argument("--fmax", type=int, default=None, metavar="N")
    p.add_argument("--order", type=int, default=None, metavar="K",
                   help="series truncation order for local-identity")
    p.add_argument("--w", type=float, default=None)
    p.add_argument("--prime-cutoff", dest="prime_cutoff", type=int,
                   default=None, metavar="P")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        disc=getattr(args, "disc", None),
        dmax=getattr(args, "dmax", None),
        nmax=getattr(args, "nmax", None),
        fmax=getattr(args, "fmax", None),
        order=getattr(args, "order", None),
        prime_cutoff=getattr(args, "prime_cutoff", None),
        w=getattr(args, "w", None),
        suite=getattr(args, "suite", None),
        fmt=args.fmt,
        out=args.out,
    )
    # the environment bound stands in for the default disc ceiling
    if cfg.command == "verify" and cfg.suite in ("r24", "all") \
            and cfg.dmax is None:
        cfg.dmax = _disc_bound_from_env()
    return cfg


def _require_positive_disc(cfg: RunConfig) -> int:
    if cfg.disc is None or cfg.disc < 1:
        raise ValueError("--disc must be a positive integer here")
    return cfg.disc


def _cmd_count(cfg: RunConfig) -> tuple[dict, int]:
    d = _require_positive_disc(cfg)
    formula = repnum.r24_formula(d)
    try:
        oracle = repnum.r24_oracle(d)
    except OracleMismatchError as exc:
        payload = {"d": d, "r24_formula": formula, "r24_oracle": None,
                   "agree": False, "error": str(exc)}
        return payload, 1
    agree = formula == oracle
    payload = {"d": d, "r24_formula": formula, "r24_oracle": oracle,
               "agree": agree}
    return payload, 0 if agree else 1


def _cmd_enumerate(cfg: RunConfig) -> tuple[dict, int]:
    d = _require_positive_disc(cfg)
    planes = lattice.enumerate_planes(d)
    payload = {"d": d, "count": len(planes),
               "planes": [p.to_json_dict() for p in planes]}
    return payload, 0


def _cmd_klein(cfg: RunConfig) -> tuple[dict, int]:
    d = _require_positive_disc(cfg)
    rows = []
    for plane in lattice.enumerate_planes(d):
        pair = klein_map(plane)
        rows.append({"plucker": list(plane.plucker.coords),
                     "a1": list(pair.a1.vec3()),
                     "a2": list(pair.a2.vec3())})
    payload = {"d": d, "count": len(rows), "pairs": rows}
    return payload, 0


def _cmd_classgroup(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.disc is None:
        raise ValueError("--disc is required")
    group = qform.class_group(cfg.disc)
    return group.to_json_dict(), 0


def _cmd_series(cfg: RunConfig) -> tuple[dict, int]:
    coeffs = repnum.rs3_coeffs(cfg.dmax)
    identity = mds.rs3_identity_numeric(cfg.w, cfg.dmax, cfg.prime_cutoff)
    payload = {"dmax": cfg.dmax, "w": cfg.w,
               "coefficients": [[d, v] for d, v in coeffs.items()],
               "identity": identity}
    return payload, 0 if identity["status"] == "pass" else 1


def _cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.suite == "all":
        overrides = {}
        if cfg.dmax is not None:
            overrides["dmax"] = cfg.dmax
        reports = suites.run_all(**overrides)
        ok = all(r["status"] == "pass" for r in reports)
        payload = {"suite": "all", "status": "pass" if ok else "fail",
                   "reports": reports}
        return payload, 0 if ok else 1
    kwargs = {}
    for key in _SUITE_KW[cfg.suite]:
        value = getattr(cfg, key)
        if value is not None:
            kwargs[key] = value
    report = suites.run_suite(cfg.suite, **kwargs)
    return report, 0 if report["status"] == "pass" else 1


_COMMANDS = {
    "count": _cmd_count,
    "enumerate": _cmd_enumerate,
    "klein": _cmd_klein,
    "classgroup": _cmd_classgroup,
    "series": _cmd_series,
    "verify": _cmd_verify,
}


# --------------------------------------------------------------------------
# rendering


def _csv_table(payload: dict, cfg: RunConfig) -> tuple[list[str], list[list]]:
    cmd = cfg.command
    if cmd == "count":
        header = ["d", "r24_formula", "r24_oracle", "agree"]
        row = [payload["d"], payload["r24_formula"], payload["r24_oracle"],
               str(payload["agree"]).lower()]
        return header, [row]
    if cmd == "enumerate":
        header = list(_PLUCKER_COLS) + ["disc"]
        return header, [p["plucker"] + [p["disc"]] for p in payload["planes"]]
    if cmd == "klein":
        header = list(_PLUCKER_COLS) + ["a1_i", "a1_j", "a1_k",
                                        "a2_i", "a2_j", "a2_k"]
        return header, [r["plucker"] + r["a1"] + r["a2"]
                        for r in payload["pairs"]]
    if cmd == "classgroup":
        header = ["a", "b", "c", "genus"]
        genus_of = {}
        for gi, coset in enumerate(payload["genera"]):
            for i in coset:
                genus_of[i] = gi
        return header, [form + [genus_of[i]]
                        for i, form in enumerate(payload["forms"])]
    if cmd == "series":
        return ["d", "r24"], [list(pair) for pair in payload["coefficients"]]
    if cmd == "verify":
        reports = payload.get("reports", [payload])
        return ["suite", "status"], [[r["check"], r["status"]] for r in reports]
    raise ValueError(f"no csv table for {cmd}")


def _render_csv(payload: dict, cfg: RunConfig) -> str:
    header, rows = _csv_table(payload, cfg)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _render_text(payload: dict, cfg: RunConfig) -> str:
    cmd = cfg.command
    lines = []
    if cmd == "count":
        verdict = "agree" if payload["agree"] else "DISAGREE"
        lines.append(f"r24({payload['d']}) = {payload['r24_formula']} (formula)"
                     f" vs {payload['r24_oracle']} (oracle): {verdict}")
    elif cmd == "enumerate":
        lines.append(f"{payload['count']} planes of norm {payload['d']} "
                     f"(lattice disc {-4 * payload['d']})")
        for p in payload["planes"]:
            lines.append("  " + str(tuple(p["plucker"])))
    elif cmd == "klein":
        lines.append(f"{payload['count']} planes of norm {payload['d']}")
        for r in payload["pairs"]:
            lines.append(f"  {tuple(r['plucker'])} -> "
                         f"a1={tuple(r['a1'])} a2={tuple(r['a2'])}")
    elif cmd == "classgroup":
        n_classes = len(payload["forms"])
        lines.append(f"disc {payload['disc']}: {n_classes} classes, "
                     f"{len(payload['genera'])} genera")
        genus_of = {}
        for gi, coset in enumerate(payload["genera"]):
            for i in coset:
                genus_of[i] = gi
        for i, form in enumerate(payload["forms"]):
            lines.append(f"  {tuple(form)}  genus {genus_of[i]}")
    elif cmd == "series":
        for d, v in payload["coefficients"]:
            lines.append(f"  d={d} r24={v}")
        idn = payload["identity"]
        det = idn["detail"]
        lines.append(f"identity at w={det['w']}: lhs={det['lhs']:.10g} "
                     f"rhs={det['rhs']:.10g} rel={det['rel_diff']:.3g} "
                     f"[{idn['status']}]")
    elif cmd == "verify":
        reports = payload.get("reports", [payload])
        for r in reports:
            mark = "pass" if r["status"] == "pass" else "FAIL"
            lines.append(f"{r['check']}: {mark}")
            if r["status"] != "pass":
                lines.append("  " + json.dumps(r["detail"], sort_keys=True))
        if "reports" in payload:
            lines.append(f"all: {payload['status']}")
    else:
        raise ValueError(f"no text rendering for {cmd}")
    return "\n".join(lines) + "\n"


def _render(payload: dict, cfg: RunConfig) -> str:
    if cfg.fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if cfg.fmt == "csv":
        return _render_csv(payload, cfg)
    return _render_text(payload, cfg)


def cmd_dispatch(argv=None) -> int:
    """Parse argv, run one subcommand, emit the report.

    Returns the process exit code instead of raising SystemExit so that
    tests can call it directly.
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        cfg = _config_from_args(args)
        payload, code = _COMMANDS[cfg.command](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = _render(payload, cfg)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {cfg.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(cmd_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
