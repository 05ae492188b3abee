"""Command-line entry point: one JSON record per result, in a fixed order.

Exit status is 0 on success, 1 when a verdict comes out false, 2 on errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product

from . import acceptance
from .config import Config
from .length import hilbert_samuel_multiplicity, multiplicity_symbol
from .mixed import MultiType, bhattacharya_value, make_context, mixed_multiplicity_report, mixed_multiplicity_table
from .poly import Polynomial, format_polynomial
from .sequences import (
    BudgetExhausted,
    certification_window,
    construct_candidate,
    default_window,
    residual_criterion,
    verify_joint_reduction,
    verify_weak_fc_sequence,
)
from .session import COUNTEREXAMPLE, Session, SessionError, format_session, parse_session
from .theorems import PROFILES, Instance, instance_generator, remark_35_counterexample, verify_theorem_33

FIELDS = ("command", "input_hash", "value", "table", "verdict", "witness", "window", "base", "stabilized",
          "seed", "elapsed_ms")
COMMANDS = ("mixed", "table", "multiplicity", "hilbert", "jr-verify", "jr-find", "fc-check", "theorem", "selftest")


class CommandError(ValueError):
    pass


def jsonable(v):
    """Integers become decimal strings; polynomials, types and tuples become their printed forms."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, Polynomial):
        return format_polynomial(v)
    if isinstance(v, MultiType):
        return v.label()
    if isinstance(v, dict):
        return {str(jsonable(k)): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return str(v)


class Emitter:
    def __init__(self, args, out):
        self.args = args
        self.out = out
        self.failed = False

    def emit(self, command: str, input_hash: str, t0: float, **fields):
        rec = {f: None for f in FIELDS}
        rec.update(command=command, input_hash=input_hash, seed=self.args.seed)
        rec.update(fields)
        if self.args.timing:
            rec["elapsed_ms"] = round((time.perf_counter() - t0) * 1000)
        rec = jsonable(rec)
        if self.args.pretty:
            text = json.dumps(rec, indent=2)
        else:
            text = json.dumps(rec, separators=(",", ":"))
        self.out.write(text + "\n")


def input_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _parse_k(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise CommandError(f"--k expects comma-separated integers, got {text!r}") from None


def _config(args) -> Config:
    kw = dict(seed=args.seed, jobs=args.jobs)
    if args.base is not None:
        kw["grid_base"] = args.base
    if args.cap is not None:
        kw["degree_cap"] = args.cap
    if args.budget is not None:
        kw["budget"] = args.budget
    if args.window is not None:
        if args.command in ("jr-verify", "fc-check"):
            kw["jr_hi"] = args.window
        else:
            kw["grid_window"] = args.window
    return Config(**kw)


def _load(args) -> tuple:
    if not args.session:
        raise CommandError(f"{args.command} needs --session FILE")
    with open(args.session, encoding="utf-8") as fh:
        session = parse_session(fh.read())
    return session, input_hash(format_session(session))


def _types(args, session: Session, d: int) -> list:
    k = _parse_k(args.k)
    if k is not None or args.k0 is not None:
        if k is None or args.k0 is None:
            raise CommandError("--k and --k0 go together")
        if len(k) != d:
            raise CommandError(f"--k has {len(k)} entries for {d} ideals")
        return [(k, args.k0)]
    if not session.types:
        raise CommandError("no type given: use --k and --k0 or a type statement")
    return list(session.types)


def _box_window(args, fam, M, config: Config):
    if args.window is None:
        return default_window(fam, M, config)
    return ((config.jr_lo, args.window),) * (fam.d + 1)


# ---------------------------------------------------------------- subcommands


def cmd_mixed(args, em: Emitter, config: Config):
    session, h = _load(args)
    ctx = make_context(session.family(), session.module())
    for k, k0 in _types(args, session, ctx.d):
        t0 = time.perf_counter()
        rep = mixed_multiplicity_report(ctx, MultiType(k0, k), config)
        em.emit("mixed", h, t0, value=rep.value, table={"type": MultiType(k0, k)}, base=rep.base,
                window=rep.window, stabilized=rep.stabilized)


def cmd_table(args, em: Emitter, config: Config):
    session, h = _load(args)
    t0 = time.perf_counter()
    ctx = make_context(session.family(), session.module())
    table = mixed_multiplicity_table(ctx, config)
    em.emit("table", h, t0, table={t.label(): v for t, v in table.items()}, value=ctx.q, stabilized=True)


def cmd_multiplicity(args, em: Emitter, config: Config):
    session, h = _load(args)
    t0 = time.perf_counter()
    M = session.module()
    value = hilbert_samuel_multiplicity(session.ideals["J"], M, config)
    symbols = {name: multiplicity_symbol(c.polys, M, config) for name, c in session.candidates.items()}
    em.emit("multiplicity", h, t0, value=value, table=symbols)


def cmd_hilbert(args, em: Emitter, config: Config):
    session, h = _load(args)
    t0 = time.perf_counter()
    ctx = make_context(session.family(), session.module())
    base = args.base if args.base is not None else 0
    width = config.grid_window
    values = {}
    for p in product(range(base, base + width + 1), repeat=ctx.axes):
        values[",".join(map(str, p))] = bhattacharya_value(ctx, p[0], p[1:], config)
    em.emit("hilbert", h, t0, table=values, value=ctx.q, base=(base,) * ctx.axes, window=width)


def cmd_jr_verify(args, em: Emitter, config: Config):
    session, h = _load(args)
    if not session.candidates:
        raise CommandError("the session declares no candidates")
    fam, M = session.family(), session.module()
    window = _box_window(args, fam, M, config)
    for name, c in session.candidates.items():
        t0 = time.perf_counter()
        v = verify_joint_reduction(c, fam, M, window, config)
        em.failed |= not v.holds
        em.emit("jr-verify", h, t0, value=f"{name} = {c}", verdict="holds" if v.holds else "fails",
                witness=v.witness, window=v.window)


def cmd_jr_find(args, em: Emitter, config: Config):
    session, h = _load(args)
    fam, M = session.family(), session.module()
    for k, k0 in _types(args, session, fam.d):
        t0 = time.perf_counter()
        window = certification_window(fam, M, config)
        try:
            c = construct_candidate(fam, k, k0, M, seed=config.seed, config=config)
        except BudgetExhausted as e:
            em.failed = True
            em.emit("jr-find", h, t0, table={"type": MultiType(k0, k)}, verdict="not found",
                    witness={"reason": str(e)}, window=window)
            continue
        em.emit("jr-find", h, t0, value=str(c), table={"type": MultiType(k0, k), "certificate": c.certificate},
                verdict="found", window=window)


def cmd_fc_check(args, em: Emitter, config: Config):
    session, h = _load(args)
    if not session.candidates:
        raise CommandError("the session declares no candidates")
    fam, M = session.family(), session.module()
    window = _box_window(args, fam, M, config)
    for name, c in session.candidates.items():
        t0 = time.perf_counter()
        v = verify_weak_fc_sequence(c, fam, M, window, config)
        table = {"weak_fc": v.holds}
        if v.holds:
            table["residual"] = residual_criterion(c, fam, M, v, config)
        em.failed |= not v.holds
        em.emit("fc-check", h, t0, value=f"{name} = {c}", table=table, verdict="holds" if v.holds else "fails",
                witness=v.witness, window=v.window)


def _suite_report(job):
    profile, seed, count, index, config = job
    inst = instance_generator(profile, seed, count)[index]
    t0 = time.perf_counter()
    rep = verify_theorem_33(inst, config, inst.label)
    return inst.label, rep.as_dict(), time.perf_counter() - t0


def cmd_theorem(args, em: Emitter, config: Config):
    if args.which == "r35":
        t0 = time.perf_counter()
        r = remark_35_counterexample(config)
        reproduced = r["joint_reduction"] and r["weak_fc"] and not r["dimension_hypothesis"] and not r["equal"]
        em.failed |= not reproduced
        em.emit("theorem", input_hash(COUNTEREXAMPLE), t0, value=r["mixed"], table=r,
                verdict="counterexample reproduced" if reproduced else "mismatch",
                mixed=r["mixed"], symbol=r["symbol"], equal=r["equal"])
    elif args.which == "session":
        session, h = _load(args)
        fam, M = session.family(), session.module()
        for k, k0 in _types(args, session, fam.d):
            t0 = time.perf_counter()
            match = [c for c in session.candidates.values() if c.tally(fam.d) == (tuple(k), k0)]
            inst = Instance(session.ring, fam, M, tuple(k), k0, match[0] if match else None, config.seed)
            rep = verify_theorem_33(inst, config)
            em.failed |= rep.status == "failed"
            em.emit("theorem", h, t0, value=rep.mixed, table=rep.as_dict(), verdict=rep.status)
    else:
        if args.profile not in PROFILES:
            raise CommandError(f"--profile must be one of {', '.join(PROFILES)}")
        jobs = [(args.profile, config.seed, args.count, i, config) for i in range(args.count)]
        h = input_hash(f"{args.profile}:{config.seed}:{args.count}")
        if config.jobs > 1:
            with ProcessPoolExecutor(max_workers=config.jobs) as pool:
                results = list(pool.map(_suite_report, jobs))
        else:
            results = [_suite_report(j) for j in jobs]
        for label, rep, elapsed in results:
            em.failed |= rep["status"] == "failed"
            em.emit("theorem", h, time.perf_counter() - elapsed, value=rep["mixed"], table=rep,
                    verdict=rep["status"])


def cmd_selftest(args, em: Emitter, config: Config):
    numbers = [n for n, _, _ in acceptance.CRITERIA]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(acceptance.run_criterion, numbers))
    else:
        results = [acceptance.run_criterion(n) for n in numbers]
    for r in results:
        em.failed |= not r.passed
        em.emit("selftest", input_hash("selftest"), time.perf_counter() - r.elapsed, value=r.number,
                table={"title": r.title}, verdict="pass" if r.passed else "fail", witness={"detail": r.detail})


HANDLERS = {
    "mixed": cmd_mixed,
    "table": cmd_table,
    "multiplicity": cmd_multiplicity,
    "hilbert": cmd_hilbert,
    "jr-verify": cmd_jr_verify,
    "jr-find": cmd_jr_find,
    "fc-check": cmd_fc_check,
    "theorem": cmd_theorem,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--session", metavar="FILE")
    common.add_argument("--k0", type=int)
    common.add_argument("--k", metavar="CSV")
    common.add_argument("--window", type=int)
    common.add_argument("--base", type=int)
    common.add_argument("--cap", type=int)
    common.add_argument("--budget", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.set_defaults(pretty=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="one compact record per line (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented records")
    common.add_argument("--timing", action="store_true", help="fill elapsed_ms (makes output non-reproducible)")

    parser = argparse.ArgumentParser(prog="mixedmult", description="Mixed multiplicities and joint reductions.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "theorem":
            p.add_argument("which", choices=("r35", "session", "suite"))
            p.add_argument("--profile", default=PROFILES[0])
            p.add_argument("--count", type=int, default=5)
    return parser


def run_command(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    em = Emitter(args, out)
    try:
        config = _config(args)
        HANDLERS[args.command](args, em, config)
    except (CommandError, SessionError, OSError, ValueError, ArithmeticError, RuntimeError, AssertionError) as e:
        print(f"mixedmult {args.command}: {e}", file=sys.stderr)
        em.emit(args.command, "", time.perf_counter(), verdict="error", witness={"error": f"{type(e).__name__}: {e}"})
        return 2
    return 1 if em.failed else 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
