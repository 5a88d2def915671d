"""Command-line front end: ``mincusp <command> [flags]``.

Exit status 0 when every requested check passes, 2 on invalid input,
3 when an internal consistency check fails.  Errors are reported as one
JSON object on stderr.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import click

from . import __version__
from . import census as C
from .errors import CheckError, MincuspError, ValidationError

FAMILIES = {"mkk": C.MKK, "mk1k": C.MK1K}
FORMATS = ("json", "csv", "dot", "svg", "text")


@dataclass
class RunConfig:
    command: str
    ks: List[int] = field(default_factory=list)
    family: Optional[str] = None
    slopes: List[str] = field(default_factory=list)
    cusp: Optional[str] = None
    fmt: str = "csv"
    out: Optional[str] = None
    seed: int = 0
    budget: float = 1e8
    precision: int = 10


def parse_k(text: str) -> List[int]:
    """'4', '1..8' or '2,4,6' (and combinations like '2,6..8')."""
    ks = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                a, b = part.split("..")
                lo, hi = int(a), int(b)
                if lo > hi:
                    raise ValueError
                ks.extend(range(lo, hi + 1))
            else:
                ks.append(int(part))
        except ValueError:
            raise ValidationError(f"bad k specification {text!r}") from None
    if not ks or min(ks) < 1:
        raise ValidationError(f"k must be positive: {text!r}")
    return sorted(set(ks))


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _dump_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: r.get(c, "") for c in columns})
    return buf.getvalue()


def _check_format(cfg: RunConfig, allowed: Sequence[str]):
    if cfg.fmt not in allowed:
        raise ValidationError(f"--format {cfg.fmt} not supported by {cfg.command}; "
                              f"use one of {', '.join(allowed)}")


def _family(name: Optional[str], default: str = "mk1k") -> str:
    key = (name or default).lower()
    if key not in FAMILIES:
        raise ValidationError(f"unknown family {name!r}; use mkk or mk1k")
    return FAMILIES[key]


def _even(cfg: RunConfig, what: str) -> List[int]:
    """Even members of the requested k set; odd k are only an error if nothing is left."""
    ks = [k for k in cfg.ks if k % 2 == 0]
    if not ks:
        raise ValidationError(f"{what} need even k, got {cfg.ks}")
    return ks


# ---------------------------------------------------------------------------
# commands

def cmd_census(cfg: RunConfig, oracle_upto: Optional[int]) -> int:
    """One row per class (k with no class get a single row with count 0)."""
    _check_format(cfg, ("csv", "json"))
    fam = _family(cfg.family)
    rows, failed = [], False
    for k in cfg.ks:
        classes = C.census_rows(fam, k)
        extra = {"count": len(classes)}
        if oracle_upto is not None and k <= oracle_upto:
            bf = C.brute_force_census(fam, k, budget=cfg.budget)
            extra["oracle_count"] = bf.count
            extra["oracle_agrees"] = bf.count == len(classes)
            failed |= bf.count != len(classes)
        for r in classes or [{"k": k, "family": fam}]:
            rows.append({**r, **extra})
    cols = ["k", "family", "class_index", "i", "j", "aut_order", "aut_or_preserving",
            "canonical_hash", "count", "oracle_count", "oracle_agrees"]
    _emit(cfg, _dump_json(rows) if cfg.fmt == "json" else _dump_csv(rows, cols))
    if failed:
        raise CheckError("brute-force oracle disagrees with the constructive census")
    return 0


def cmd_invariants(cfg: RunConfig) -> int:
    from .exactnum import arithmetic_verdict
    _check_format(cfg, ("csv", "json"))
    rows = []
    for k in _even(cfg, "arithmetic invariants"):
        d = arithmetic_verdict(k).to_dict()
        d["norm_cyclotomic"] = d["norms"]["cyclotomic"]
        d["norm_relative"] = d["norms"]["relative"]
        rows.append(d)
    if cfg.fmt == "json":
        _emit(cfg, _dump_json(rows))
    else:
        for d in rows:
            d.pop("norms")
        _emit(cfg, _dump_csv(rows, ["k", "degree", "adjoint_degree", "disc_radicand",
                                    "integral", "quasi_arithmetic", "arithmetic",
                                    "norm_cyclotomic", "norm_relative"]))
    return 0


def cmd_volume(cfg: RunConfig) -> int:
    from .geometry import volume_Mkk, volume_bounds
    _check_format(cfg, ("csv", "json", "text"))
    p = cfg.precision
    rows = []
    for k in _even(cfg, "volumes of M_k"):
        r = volume_Mkk(k)
        lo, hi = volume_bounds(k)
        rows.append({"k": k, "vol_closed": round(r.volume, p),
                     "vol_ushijima": round(r.cross_check, p),
                     "lower_bound": round(lo, p), "upper_bound": round(hi, p),
                     "abs_delta": float(f"{abs(r.volume - r.cross_check):.3e}")})
    if cfg.fmt == "json":
        _emit(cfg, _dump_json(rows))
    elif cfg.fmt == "text":
        _emit(cfg, "".join(f"{r['vol_closed']:.{p}f}\n" for r in rows))
    else:
        out = io.StringIO()
        out.write("k,vol_closed,vol_ushijima,lower_bound,upper_bound,abs_delta\n")
        for r in rows:
            out.write(f"{r['k']},{r['vol_closed']:.{p}f},{r['vol_ushijima']:.{p}f},"
                      f"{r['lower_bound']:.{p}f},{r['upper_bound']:.{p}f},"
                      f"{r['abs_delta']:.3e}\n")
        _emit(cfg, out.getvalue())
    return 0


def _slopes(cfg: RunConfig):
    from .spine import THEOREM_SLOPES, SlopeCurve
    if not cfg.slopes or cfg.slopes == ["all"]:
        return list(THEOREM_SLOPES), False
    if cfg.slopes == ["model"]:
        from .spine import MODEL_SLOPE
        return [MODEL_SLOPE], True
    try:
        return [SlopeCurve.parse(s) for s in cfg.slopes], False
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"bad slope list {cfg.slopes}") from None


def cmd_dehnfill(cfg: RunConfig) -> int:
    from .spine import dehn_fill
    from .triangulation import LEFT, RIGHT, build_mk1k, build_mkk
    _check_format(cfg, ("csv", "json"))
    slopes, model = _slopes(cfg)
    rows, failed = [], False
    for k in _even(cfg, "Dehn fillings of M_k"):
        if cfg.cusp in (None, "all"):
            cusps = range(1, k + 1)
        elif cfg.cusp.isdigit():
            cusps = [int(cfg.cusp)]
        else:
            raise ValidationError(f"--cusp expects an index or 'all', got {cfg.cusp!r}")
        ref = build_mk1k(0, k - 1)
        for tw in (LEFT, RIGHT):
            t = build_mkk(k, tw)
            for cusp in cusps:
                for sl in slopes:
                    filled, tr = dehn_fill(t, cusp, sl, model=model)
                    iso = C.is_isomorphic(filled, ref) is not None
                    inv = C.partition_invariant(filled)
                    failed |= not iso
                    rows.append({"k": k, "twist": tw, "cusp": cusp, "slope": str(sl),
                                 "normal_coords": " ".join(map(str, tr.counts)),
                                 "points": len(tr.points), "j_faces": len(tr.j_faces),
                                 "final_counts": " ".join(map(str, tr.final_counts)),
                                 "partition": f"({inv.i},{inv.j})",
                                 "isomorphic_to_M0": iso,
                                 "canonical_hash": C.canonical_hash(filled)})
    cols = ["k", "twist", "cusp", "slope", "normal_coords", "points", "j_faces",
            "final_counts", "partition", "isomorphic_to_M0", "canonical_hash"]
    _emit(cfg, _dump_json(rows) if cfg.fmt == "json" else _dump_csv(rows, cols))
    if failed:
        raise CheckError("a filling is not isomorphic to the (0, k-1) member")
    return 0


def cmd_spine(cfg: RunConfig, twist: str, index: int) -> int:
    from .spine import big_face_dot, big_face_svg, dualize
    from .triangulation import build_mkk
    _check_format(cfg, ("json", "dot", "svg"))
    if len(cfg.ks) != 1:
        raise ValidationError("spine export takes a single k")
    k = cfg.ks[0]
    fam = _family(cfg.family, "mkk")
    if fam == C.MKK:
        if k % 2:
            raise ValidationError(f"M_k is defined for even k, got {k}")
        t = build_mkk(k, "Right" if twist.lower().startswith("r") else "Left")
    else:
        members = C.enumerate_family(fam, k)
        if not 0 <= index < len(members):
            raise ValidationError(f"class index {index} out of range 0..{len(members) - 1}")
        t = members[index][0]
    s = dualize(t)
    if cfg.fmt == "dot":
        _emit(cfg, big_face_dot(s))
    elif cfg.fmt == "svg":
        _emit(cfg, big_face_svg(s))
    else:
        d = s.to_dict()
        d["euler_characteristic"] = s.euler_characteristic()
        _emit(cfg, _dump_json(d))
    return 0


def cmd_verify(cfg: RunConfig, quick: bool) -> int:
    from .acceptance import run_all
    _check_format(cfg, ("json", "text"))
    results = run_all(quick=quick, seed=cfg.seed)
    if cfg.fmt == "json":
        _emit(cfg, _dump_json([r.to_dict() for r in results]))
    else:
        # timings vary between runs, so text output reports only the verdicts
        _emit(cfg, "".join(f"[{'PASS' if r.ok else 'FAIL'}] {r.number}. {r.name}: {r.detail}\n"
                           for r in results))
    if not all(r.ok for r in results):
        raise CheckError("acceptance criteria failed: " +
                           ", ".join(str(r.number) for r in results if not r.ok))
    return 0


# ---------------------------------------------------------------------------
# click wiring

def _common(f):
    f = click.option("--k", "k", default=None, help="k, a range a..b, or a list a,b,c")(f)
    f = click.option("--family", default=None, help="mkk or mk1k")(f)
    f = click.option("--slope", default=None, help="comma list of p/q, 'all' or 'model'")(f)
    f = click.option("--cusp", default=None, help="cusp index or 'all'")(f)
    f = click.option("--format", "fmt", type=click.Choice(FORMATS), default=None)(f)
    f = click.option("--out", default=None, type=click.Path(dir_okay=False))(f)
    f = click.option("--seed", default=0, type=int, show_default=True)(f)
    f = click.option("--budget", default=1e8, type=float, show_default=True)(f)
    f = click.option("--precision", default=10, type=click.IntRange(1, 17),
                     show_default=True)(f)
    return f


def _config(command, k, family, slope, cusp, fmt, out, seed, budget, precision,
            default_k="2", default_fmt="csv") -> RunConfig:
    return RunConfig(command=command, ks=parse_k(k or default_k), family=family,
                     slopes=[s for s in (slope or "").split(",") if s], cusp=cusp,
                     fmt=fmt or default_fmt, out=out, seed=seed, budget=budget,
                     precision=precision)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__)
def main():
    """Minimal cusped hyperbolic 3-manifolds with geodesic boundary."""


@main.command()
@_common
@click.option("--oracle", nargs=2, default=None, metavar="upto N",
              help="cross-check k <= N with the brute-force census")
def census(oracle, **kw):
    """Census of M_{k,k} / M_{k+1,k} (one row per isomorphism class)."""
    def go():
        upto = None
        if oracle:
            if oracle[0] != "upto" or not oracle[1].isdigit():
                raise ValidationError("--oracle expects 'upto N'")
            upto = int(oracle[1])
        return cmd_census(_config("census", **kw, default_k="1..8"), upto)
    sys.exit(_run(go))


@main.command()
@_common
def invariants(**kw):
    """Trace-field degrees, integrality and quasi-arithmeticity for even k."""
    sys.exit(_run(lambda: cmd_invariants(_config("invariants", **kw, default_k="2..20"))))


@main.command()
@_common
def volume(**kw):
    """Volume table for M_k (closed form, Ushijima cross-check, bounds)."""
    sys.exit(_run(lambda: cmd_volume(_config("volume", **kw))))


@main.command()
@_common
@click.option("--model", is_flag=True, help="use the worked model slope 1/2")
def dehnfill(model, **kw):
    """Fill every cusp of M_L(k), M_R(k) along the given slopes and identify the result."""
    if model:
        kw["slope"] = "model"
    sys.exit(_run(lambda: cmd_dehnfill(_config("dehnfill", **kw))))


@main.command()
@_common
@click.option("--twist", default="L", help="L or R for the M_{k,k} member")
@click.option("--index", default=0, type=int, help="class index for mk1k")
def spine(twist, index, **kw):
    """Export the dual spine (JSON) or draw its big face (DOT, SVG)."""
    sys.exit(_run(lambda: cmd_spine(_config("spine", **kw, default_fmt="json"), twist, index)))


@main.command()
@_common
@click.option("--quick", is_flag=True, help="smaller ranges, skip the slow oracle cases")
def verify(quick, **kw):
    """Run every acceptance criterion."""
    sys.exit(_run(lambda: cmd_verify(_config("verify", **kw, default_fmt="text"), quick)))


def _run(fn) -> int:
    try:
        return fn()
    except ValidationError as e:
        _error(e, 2)
        return 2
    except CheckError as e:
        _error(e, 3)
        return 3
    except MincuspError as e:
        _error(e, 3)
        return 3


def _error(e: Exception, code: int):
    click.echo(json.dumps({"error": type(e).__name__, "message": str(e), "exit": code},
                          sort_keys=True), err=True)


if __name__ == "__main__":
    main()
