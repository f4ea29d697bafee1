"""Command line front end.

Subcommands:
  range    predicted nonvanishing interval for one weight row
  phi      alternating-sum section count for a complete intersection
  betti    certified table of syzygy space dimensions
  verify   compute a prediction and a table, check containment
  duality  compute a table and its reflected partner, compare cells

Output is a plain text block or JSON (--format json).  JSON output is
byte-identical across repeat runs: keys are sorted, there are no
timestamps, and every integer that is not structurally bounded (section
counts, ranks, dimensions, interval endpoints) is a decimal string so
consumers never lose precision to doubles.  Schemas live in
syzkit/schemas/.

Exit codes: 0 success, 1 usage or input errors, 2 a checked property
fails (verification zero cell, duality mismatch), 3 the check could not
be decided with the computed cells.

Operational knobs fall back to environment variables when flags are
absent: SYZKIT_PRIMES, SYZKIT_SEED, SYZKIT_THREADS, SYZKIT_FORMAT,
SYZKIT_SIZE_CAP, SYZKIT_P_LIMIT.  Precedence: flag, then environment,
then default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import bounds, geometry as geo, koszul
from .exactalg import DEFAULT_P1, DEFAULT_P2, PrimeField, RankOptions

_ENV_PREFIX = "SYZKIT_"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for failed
    # checks, so usage problems are mapped to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation; round-trips through as_dict/from_dict."""

    command: str
    variety: str
    A: str
    B: str | None
    d: int | None
    q: int | None
    p_limit: int | None
    q_values: tuple | None
    H: tuple | None
    L: str | None
    primes: tuple
    seed: int
    threads: int
    fmt: str
    size_cap: int

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "variety": self.variety,
            "A": self.A,
            "B": self.B,
            "d": self.d,
            "q": self.q,
            "p_limit": self.p_limit,
            "q_values": list(self.q_values) if self.q_values is not None else None,
            "H": list(self.H) if self.H is not None else None,
            "L": self.L,
            "primes": list(self.primes),
            "seed": self.seed,
            "threads": self.threads,
            "format": self.fmt,
            "size_cap": self.size_cap,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        return cls(
            command=d["command"],
            variety=d["variety"],
            A=d["A"],
            B=d["B"],
            d=d["d"],
            q=d["q"],
            p_limit=d["p_limit"],
            q_values=tuple(d["q_values"]) if d["q_values"] is not None else None,
            H=tuple(d["H"]) if d["H"] is not None else None,
            L=d["L"],
            primes=tuple(d["primes"]),
            seed=d["seed"],
            threads=d["threads"],
            fmt=d["format"],
            size_cap=d["size_cap"],
        )


def _env(name: str) -> str | None:
    return os.environ.get(_ENV_PREFIX + name)


def _resolve_int(flag_value, env_name: str, default: int) -> int:
    if flag_value is not None:
        return flag_value
    raw = _env(env_name)
    if raw is not None:
        return int(raw)
    return default


def _resolve_str(flag_value, env_name: str, default: str) -> str:
    if flag_value is not None:
        return flag_value
    raw = _env(env_name)
    if raw is not None:
        return raw
    return default


def _resolve_primes(flag_value) -> tuple[int, int]:
    raw = flag_value if flag_value is not None else _env("PRIMES")
    if raw is None:
        return DEFAULT_P1, DEFAULT_P2
    parts = raw.split(",")
    if len(parts) != 2:
        raise ValueError(f"--primes wants 'p1,p2', got {raw!r}")
    p1, p2 = int(parts[0]), int(parts[1])
    # validate eagerly so every subcommand rejects bad moduli the same way,
    # including the ones that never touch the rank engine
    PrimeField(p1)
    PrimeField(p2)
    if p1 == p2:
        raise ValueError("--primes wants two distinct primes")
    return p1, p2


def _resolve_p_limit(flag_value) -> int | None:
    if flag_value is not None:
        return flag_value
    raw = _env("P_LIMIT")
    return int(raw) if raw is not None else None


def _pinned_A(v: geo.Variety) -> tuple:
    # the CLI works with the primitive polarization; the library takes any A
    return (1,) * v.picard_rank


def _add_common(sp, with_B=True, with_d=True):
    sp.add_argument("--variety", required=True,
                    help="pn:<n> | pp:<s>,<t> | gr24")
    if with_B:
        sp.add_argument("--B", default=None,
                        help="auxiliary twist class (default 0)")
    if with_d:
        sp.add_argument("--d", type=int, required=True,
                        help="multiple of A giving L = O(d A)")
    sp.add_argument("--primes", default=None,
                    help="two rank-check primes 'p1,p2'")
    sp.add_argument("--seed", type=int, default=None,
                    help="seed for randomized rank strategies")
    sp.add_argument("--threads", type=int, default=None,
                    help="parallel rank workers (0 or 1 = serial)")
    sp.add_argument("--format", dest="fmt", choices=("table", "json"),
                    default=None, help="output format")
    sp.add_argument("--size-cap", type=int, default=None,
                    help="largest complex term dimension to materialize")


def _build_parser() -> _Parser:
    ap = _Parser(prog="syzkit",
                 description="syzygy ranges and certified Koszul tables")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("range", help="predicted nonvanishing interval")
    _add_common(sp)
    sp.add_argument("--q", type=int, required=True, help="weight row, 1..dim")

    sp = sub.add_parser("phi", help="alternating-sum section count")
    sp.add_argument("--variety", required=True)
    sp.add_argument("--H", action="append", required=True,
                    help="complete intersection class, repeatable")
    sp.add_argument("--L", required=True, help="twist class to count sections of")
    sp.add_argument("--format", dest="fmt", choices=("table", "json"), default=None)

    sp = sub.add_parser("betti", help="certified syzygy dimension table")
    _add_common(sp)
    sp.add_argument("--p-limit", type=int, default=None,
                    help="largest column (default r_d - dim)")
    sp.add_argument("--q-values", default=None,
                    help="comma-separated rows to compute (default all)")

    sp = sub.add_parser("verify", help="prediction vs computed row")
    _add_common(sp)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--p-limit", type=int, default=None)

    sp = sub.add_parser("duality", help="table vs its reflected partner")
    _add_common(sp)
    sp.add_argument("--p-limit", type=int, default=None)
    sp.add_argument("--q-values", default=None,
                    help="rows of the primary table to compute")
    return ap


def _make_config(args) -> RunConfig:
    v = geo.parse_variety(args.variety)
    B = getattr(args, "B", None)
    if B is None and args.command != "phi":
        B = ",".join("0" for _ in range(v.picard_rank))
    q_values = getattr(args, "q_values", None)
    if q_values is not None:
        q_values = tuple(int(x) for x in q_values.split(","))
    H = getattr(args, "H", None)
    return RunConfig(
        command=args.command,
        variety=geo.format_variety(v),
        A=geo.format_class(_pinned_A(v)),
        B=B,
        d=getattr(args, "d", None),
        q=getattr(args, "q", None),
        p_limit=_resolve_p_limit(getattr(args, "p_limit", None)),
        q_values=q_values,
        H=tuple(H) if H is not None else None,
        L=getattr(args, "L", None),
        primes=_resolve_primes(getattr(args, "primes", None)),
        seed=_resolve_int(getattr(args, "seed", None), "SEED", 1729),
        threads=_resolve_int(getattr(args, "threads", None), "THREADS", 0),
        fmt=_resolve_str(getattr(args, "fmt", None), "FORMAT", "table"),
        size_cap=_resolve_int(getattr(args, "size_cap", None), "SIZE_CAP",
                              koszul.DEFAULT_SIZE_CAP),
    )


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _prediction_dict(setup: bounds.Setup, pred) -> dict:
    dec = bounds.validate_setup(setup)
    return {
        "q": pred.q,
        "n_d": str(pred.n_d),
        "N_d": str(pred.N_d),
        "p_min": str(pred.p_min),
        "p_max": str(pred.p_max),
        "sharp": pred.sharp,
        "effective_ok": pred.effective_ok,
        "expansion_gap_ok": pred.expansion_gap_ok,
        "h0_Ld": str(geo.h0(setup.variety, geo.vscale(setup.d, setup.A))),
        "b": str(dec.b),
        "P": geo.format_class(dec.P),
    }


def _setup_from_config(cfg: RunConfig, q=None) -> bounds.Setup:
    v = geo.parse_variety(cfg.variety)
    return bounds.Setup(
        v, geo.parse_class(cfg.A), geo.parse_class(cfg.B), cfg.d, q
    )


def _cmd_range(cfg: RunConfig) -> int:
    setup = _setup_from_config(cfg, cfg.q)
    pred = bounds.predict_range(setup)
    info = _prediction_dict(setup, pred)
    if cfg.fmt == "json":
        _emit_json({"config": cfg.as_dict(), "prediction": info})
    else:
        print(f"variety={cfg.variety} A={cfg.A} B={cfg.B} d={cfg.d} q={cfg.q}")
        print(f"h0_Ld={info['h0_Ld']} b={info['b']} P={info['P']}")
        print(f"n_d={info['n_d']} N_d={info['N_d']}")
        print(f"p_range=[{info['p_min']}, {info['p_max']}] sharp={pred.sharp}")
        print(f"effective_ok={pred.effective_ok} "
              f"expansion_gap_ok={pred.expansion_gap_ok}")
    return 0


def _cmd_phi(cfg: RunConfig) -> int:
    v = geo.parse_variety(cfg.variety)
    hs = [geo.parse_class(h) for h in cfg.H]
    val = bounds.phi(v, hs, geo.parse_class(cfg.L))
    if cfg.fmt == "json":
        _emit_json({"config": cfg.as_dict(), "value": str(val)})
    else:
        print(f"variety={cfg.variety} H=[{'; '.join(cfg.H)}] L={cfg.L}")
        print(f"value={val}")
    return 0


def _table_from_config(cfg: RunConfig, q_values=None, B=None):
    v = geo.parse_variety(cfg.variety)
    f1, f2 = PrimeField(cfg.primes[0]), PrimeField(cfg.primes[1])
    opts = RankOptions(seed=cfg.seed)
    return koszul.betti_table(
        v,
        geo.parse_class(cfg.A),
        geo.parse_class(B if B is not None else cfg.B),
        cfg.d,
        p_limit=cfg.p_limit,
        q_values=q_values if q_values is not None else cfg.q_values,
        fields=(f1, f2),
        options=opts,
        size_cap=cfg.size_cap,
        threads=cfg.threads if cfg.threads and cfg.threads > 1 else None,
    )


def _cmd_betti(cfg: RunConfig) -> int:
    table = _table_from_config(cfg)
    if cfg.fmt == "json":
        _emit_json({"config": cfg.as_dict(), "table": table.as_dict()})
    else:
        print(koszul.render_betti(table))
    return 0


def _report_dict(rep: koszul.VerificationReport) -> dict:
    return {
        "q": rep.q,
        "p_lo": str(rep.p_lo),
        "p_hi": str(rep.p_hi),
        "degenerate": rep.degenerate,
        "containment": rep.containment,
        "equality": rep.equality,
        "support": list(rep.support),
        "missing": list(rep.missing),
    }


def _cmd_verify(cfg: RunConfig) -> int:
    setup = _setup_from_config(cfg, cfg.q)
    pred = bounds.predict_range(setup)
    table = _table_from_config(cfg, q_values=(cfg.q,))
    rep = koszul.verify(pred, table)
    info = _prediction_dict(setup, pred)
    if cfg.fmt == "json":
        _emit_json({
            "config": cfg.as_dict(),
            "prediction": info,
            "report": _report_dict(rep),
            "table": table.as_dict(),
        })
    else:
        print(f"variety={cfg.variety} B={cfg.B} d={cfg.d} q={cfg.q}")
        print(f"interval=[{rep.p_lo}, {rep.p_hi}] degenerate={rep.degenerate}")
        print(f"containment={rep.containment} equality={rep.equality}")
        print(f"support={','.join(str(p) for p in rep.support)}")
        if rep.missing:
            print(f"missing={','.join(str(p) for p in rep.missing)}")
    if rep.containment is True:
        return 0
    if rep.containment is False:
        return 2
    return 3


def _cmd_duality(cfg: RunConfig) -> int:
    setup = _setup_from_config(cfg)
    dual = bounds.dual_twist(setup)
    table = _table_from_config(cfg)
    n = setup.variety.dim
    reflected = tuple(sorted({n - q for q in table.q_values if 1 <= q <= n}))
    dual_table = _table_from_config(
        cfg, q_values=reflected, B=geo.format_class(dual.cls)
    )
    rep = koszul.duality_check(table, dual_table)
    if cfg.fmt == "json":
        _emit_json({
            "config": cfg.as_dict(),
            "dual_B": geo.format_class(dual.cls),
            "report": {
                "checked": rep.checked,
                "ok": rep.ok,
                "violations": [
                    {
                        "p": x["p"], "q": x["q"], "dim": str(x["dim"]),
                        "dual_p": x["dual_p"], "dual_q": x["dual_q"],
                        "dual_dim": str(x["dual_dim"]),
                    }
                    for x in rep.violations
                ],
                "range_mismatches": list(rep.range_mismatches),
            },
            "table": table.as_dict(),
            "dual_table": dual_table.as_dict(),
        })
    else:
        print(f"variety={cfg.variety} B={cfg.B} dual_B={geo.format_class(dual.cls)} "
              f"d={cfg.d}")
        print(f"checked={rep.checked} violations={len(rep.violations)} "
              f"range_mismatches={len(rep.range_mismatches)}")
        for x in rep.violations:
            print(f"  K({x['p']},{x['q']})={x['dim']} but "
                  f"K({x['dual_p']},{x['dual_q']})={x['dual_dim']}")
        for x in rep.range_mismatches:
            print(f"  K({x['p']},{x['q']}) reflects to uncomputed "
                  f"({x['dual_p']},{x['dual_q']})")
    if rep.violations:
        return 2
    if rep.range_mismatches:
        return 3
    return 0


_COMMANDS = {
    "range": _cmd_range,
    "phi": _cmd_phi,
    "betti": _cmd_betti,
    "verify": _cmd_verify,
    "duality": _cmd_duality,
}


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
        cfg = _make_config(args)
        return _COMMANDS[cfg.command](cfg)
    except SystemExit:
        raise
    except (ValueError, bounds.SetupError, koszul.SizeCapExceeded) as e:
        sys.stderr.write(f"syzkit: error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
