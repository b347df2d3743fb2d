"""Batch command-line surface with stable, machine-readable output.

Exit codes: 0 success, 2 validation failure (machine-readable error object on
stdout), 3 guard exceeded.  All output is deterministic: JSON with sorted
keys, or flat TSV via --format tsv.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from functools import wraps

import click

from . import cyclic, hochschild, mackey, operad, qfin, rings, truncation, witt

WINDOW_GUARD = 64


class GuardExceeded(Exception):
    pass


def _emit(ctx, payload):
    fmt = ctx.obj.get("format", "json")
    if fmt == "tsv":
        for line in _flatten(payload):
            click.echo("\t".join(str(x) for x in line))
    else:
        click.echo(json.dumps(payload, sort_keys=True, default=str))


def _flatten(payload, prefix=""):
    if isinstance(payload, dict):
        for key in sorted(payload):
            yield from _flatten(payload[key], f"{prefix}{key}." if prefix else f"{key}.")
    elif isinstance(payload, (list, tuple)):
        yield (prefix.rstrip("."), ",".join(str(x) for x in payload))
    else:
        yield (prefix.rstrip("."), payload)


def guarded(fn):
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (GuardExceeded, cyclic.SizeGuard) as exc:
            click.echo(json.dumps({"error": str(exc), "kind": "guard"}, sort_keys=True))
            sys.exit(3)
        except (
            ValueError,
            KeyError,
            rings.NonFieldRing,
            rings.DimensionMismatch,
            cyclic.EmptyOrder,
            operad.NonComposable,
            qfin.TargetMismatch,
            qfin.NoPrimeDivisorInWindow,
            qfin.NotQuasifinite,
            mackey.LevelOutsideWindow,
            mackey.NotQuasifinite,
            witt.SupportMismatch,
            witt.NonIntervalSupport,
            witt.NotSummable,
            witt.UnsupportedEnumerationRing,
            hochschild.AlgebraMismatch,
            hochschild.DegreeBoundNegative,
            json.JSONDecodeError,
        ) as exc:
            click.echo(json.dumps({"error": str(exc), "kind": "validation"}, sort_keys=True))
            sys.exit(2)

    return wrapper


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip() != ""]


def _trunc(text):
    elems = _ints(text)
    if any(t > WINDOW_GUARD for t in elems):
        raise GuardExceeded(f"window elements above {WINDOW_GUARD}")
    return truncation.TruncationSet(tuple(elems))


def _paths(n, text):
    return [cyclic.Path.deserialize(n, p) for p in text.split(",")]


def _witt_vector(ring, support, text):
    if text.startswith("@"):
        return witt.WittVector.from_json(json.load(open(text[1:])))
    values = {}
    if text.strip():
        for item in text.split(","):
            t, v = item.split(":")
            values[int(t)] = ring.parse(v)
    return witt.WittVector.from_dict(ring, support, values)


def max_threads():
    try:
        return max(1, int(os.environ.get("POLYGONIC_MAX_THREADS", "1")))
    except ValueError:
        return 1


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "tsv"]), default="json")
@click.pass_context
def main(ctx, fmt):
    """Exact computations: truncation sets, cyclic combinatorics, quasifinite
    Mackey windows, big Witt vectors, and Hochschild homology."""
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt


# --------------------------------------------------------------------- trunc


@main.group()
def trunc():
    """Truncation sets."""


# keep the spec-facing name as an alias
main.add_command(trunc, name="truncation")


@trunc.command()
@click.option("--set", "set_", required=True)
@click.pass_context
@guarded
def check(ctx, set_):
    _emit(ctx, {"is_truncation_set": truncation.is_truncation_set(_ints(set_))})


@trunc.command()
@click.option("--set", "set_", required=True)
@click.option("--n", type=int, required=True)
@click.pass_context
@guarded
def divide(ctx, set_, n):
    _emit(ctx, {"set": _trunc(set_).divide(n).to_json()})


@trunc.command()
@click.option("--n", type=int, required=True)
@click.pass_context
@guarded
def divisors(ctx, n):
    if n > WINDOW_GUARD:
        raise GuardExceeded(f"window bound is {WINDOW_GUARD}")
    _emit(ctx, {"set": truncation.divisors_truncation(n).to_json()})


@trunc.command()
@click.option("--N", "--n", "n", type=int, required=True)
@click.pass_context
@guarded
def interval(ctx, n):
    if n > WINDOW_GUARD:
        raise GuardExceeded(f"window bound is {WINDOW_GUARD}")
    _emit(ctx, {"set": truncation.interval_truncation(n).to_json()})


# -------------------------------------------------------------------- cyclic


@main.group(name="cyclic")
def cyclic_group():
    """Paths, admissibility, hom sets, cut sets."""


@cyclic_group.command()
@click.option("--n", type=int, required=True)
@click.pass_context
@guarded
def paths(ctx, n):
    if n > WINDOW_GUARD:
        raise GuardExceeded(f"cycle size above {WINDOW_GUARD}")
    _emit(ctx, {"paths": [p.serialize() for p in cyclic.path_set(n)], "count": n + n * n})


@cyclic_group.command()
@click.option("--n", type=int, required=True)
@click.option("--seq", required=True, help="comma list, e.g. v:0,e:0:1")
@click.option("--target", required=True)
@click.pass_context
@guarded
def admissible(ctx, n, seq, target):
    ok, wit = cyclic.is_admissible(_paths(n, seq), cyclic.Path.deserialize(n, target))
    _emit(ctx, {"admissible": ok, "witness": [str(x) for x in wit] if wit else None})


@cyclic_group.command()
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.pass_context
@guarded
def hom(ctx, n, m):
    maps = cyclic.hom_set(n, m)
    _emit(ctx, {"count": len(maps), "maps": sorted(f.serialize() for f in maps)})


@cyclic_group.command()
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--vals", required=True)
@click.pass_context
@guarded
def dualize(ctx, n, m, vals):
    f = cyclic.CyclicMap(n, m, tuple(_ints(vals)))
    _emit(ctx, {"dual": f.dual().serialize()})


@cyclic_group.command()
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--vals", required=True, help="map values, e.g. 0,1")
@click.option("--path", "path_", required=True, help="v:a or e:a:b on the source")
@click.pass_context
@guarded
def pushforward(ctx, n, m, vals, path_):
    f = cyclic.CyclicMap(n, m, tuple(_ints(vals)))
    p = cyclic.Path.deserialize(n, path_)
    _emit(ctx, {"path": cyclic.path_pushforward(f, p).serialize()})


@cyclic_group.command()
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--p", type=int, default=None)
@click.pass_context
@guarded
def cut(ctx, q, n, p):
    cs = cyclic.cut_lambda(q, n, p)
    if cs.size > WINDOW_GUARD * WINDOW_GUARD:
        raise GuardExceeded("cut set too large")
    payload = {
        "size": cs.size,
        "colours": [cs.colour(e).serialize() for e in range(cs.size)],
    }
    if p is not None:
        payload["action"] = [cs.action(e) for e in range(cs.size)]
        payload["quotient"] = [cs.quotient_element(e) for e in range(cs.size)]
        payload["cover_checks"] = operad.cut_quotient_check(cs)
    _emit(ctx, payload)


# -------------------------------------------------------------------- operad


@main.group(name="operad")
def operad_group():
    """Operation sets and labelled cycle bookkeeping."""


@operad_group.command()
@click.option("--n", type=int, required=True)
@click.option("--seq", required=True)
@click.option("--target", required=True)
@click.pass_context
@guarded
def mulset(ctx, n, seq, target):
    perms = operad.mul_set(_paths(n, seq), cyclic.Path.deserialize(n, target))
    _emit(ctx, {"count": len(perms), "permutations": [list(p) for p in perms]})


@operad_group.command()
@click.option("--spec", required=True, help="JSON or @file")
@click.option("--k", type=int, required=True)
@click.pass_context
@guarded
def rotate(ctx, spec, k):
    data = json.load(open(spec[1:])) if spec.startswith("@") else json.loads(spec)
    s = operad.LabelledCycleSpec.from_json(data)
    _emit(ctx, {"spec": s.rotate(k).to_json()})


@operad_group.command()
@click.option("--spec", required=True)
@click.option("--edge", type=int, required=True)
@click.pass_context
@guarded
def contract(ctx, spec, edge):
    data = json.load(open(spec[1:])) if spec.startswith("@") else json.loads(spec)
    s = operad.LabelledCycleSpec.from_json(data)
    _emit(ctx, {"spec": s.contract(edge).to_json()})


# ---------------------------------------------------------------------- qfin


@main.group(name="qfin")
def qfin_group():
    """Quasifinite Z-sets and spans."""


@qfin_group.command(name="fixed-points")
@click.option("--orbits", required=True)
@click.option("--k", type=int, required=True)
@click.pass_context
@guarded
def fixed_points(ctx, orbits, k):
    S = qfin.QFinSet(tuple(_ints(orbits)))
    F = qfin.fixed_points(S, k)
    _emit(ctx, {"orbits": sorted(F.orbits), "elements": F.element_count()})


@qfin_group.command()
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--u", type=int, default=1)
@click.option("--shift-a", type=int, default=0)
@click.option("--shift-b", type=int, default=0)
@click.pass_context
@guarded
def pullback(ctx, a, b, u, shift_a, shift_b):
    U = qfin.QFinSet.orbit(u)
    f = qfin.QFinMap(qfin.QFinSet.orbit(a), U, ((0, shift_a),))
    g = qfin.QFinMap(qfin.QFinSet.orbit(b), U, ((0, shift_b),))
    W, p, q = qfin.pullback(f, g)
    _emit(ctx, {
        "orbits": sorted(W.orbits),
        "left": p.to_json(),
        "right": q.to_json(),
        "elements": W.element_count(),
    })


@qfin_group.command()
@click.option("--orbits", required=True)
@click.option("--n", type=int, required=True)
@click.pass_context
@guarded
def scale(ctx, orbits, n):
    S = qfin.QFinSet(tuple(_ints(orbits)))
    _emit(ctx, {"orbits": sorted(qfin.scale(S, n).orbits)})


@qfin_group.command(name="is-proper")
@click.option("--pairs", required=True, help="m:n pairs, orbit size to target size")
@click.pass_context
@guarded
def is_proper_cmd(ctx, pairs):
    sizes = [tuple(int(x) for x in item.split(":")) for item in pairs.split(",")]
    S = qfin.QFinSet(tuple(m for m, _ in sizes))
    T = qfin.QFinSet(tuple(sorted(set(n for _, n in sizes))))
    assign = tuple((T.orbits.index(n), 0) for _, n in sizes)
    f = qfin.QFinMap(S, T, assign)
    _emit(ctx, {"proper": qfin.is_proper(f)})


def _parse_span(text):
    """a:l:b[:s:t] for the span Z/a <- Z/l -> Z/b with optional leg shifts."""
    parts = [int(x) for x in text.split(":")]
    if len(parts) == 3:
        a, l, b = parts
        s = t = 0
    elif len(parts) == 5:
        a, l, b, s, t = parts
    else:
        raise ValueError("span syntax is a:l:b or a:l:b:s:t")
    return qfin.SpanMorphism.single(a, l, b, s, t)


@qfin_group.command(name="compose-spans")
@click.option("--first", required=True, help="span a:l:b[:s:t]")
@click.option("--second", required=True, help="span b:l:c[:s:t]")
@click.pass_context
@guarded
def compose_spans_cmd(ctx, first, second):
    s1 = _parse_span(first)
    s2 = _parse_span(second)
    composite = qfin.compose_spans(s2, s1)
    rows, src, tgt = composite.canonical()
    _emit(ctx, {
        "apex": sorted(composite.apex.orbits),
        "canonical_orbits": [list(r) for r in rows],
        "source": list(src),
        "target": list(tgt),
    })


@qfin_group.command(name="weakly-terminal")
@click.option("--orbits", required=True)
@click.option("--primes", required=True)
@click.pass_context
@guarded
def weakly_terminal(ctx, orbits, primes):
    S = qfin.QFinSet(tuple(_ints(orbits)))
    f = qfin.weakly_terminal_map(S, _ints(primes))
    _emit(ctx, {"target": sorted(f.target.orbits), "assign": f.to_json()["assign"]})


# -------------------------------------------------------------------- mackey


@main.group(name="mackey")
def mackey_group():
    """Windowed Mackey modules."""


def _window_module(window_text, burnside_m=None, witt_ring=None, witt_n=None):
    if witt_ring is not None:
        if witt_n is None or witt_n > WINDOW_GUARD:
            raise GuardExceeded(f"window bound is {WINDOW_GUARD}")
        return witt.witt_as_mackey(rings.ring_from_string(witt_ring), witt_n)
    window = _trunc(window_text)
    return mackey.burnside_representable(burnside_m or 1, window)


@mackey_group.command()
@click.option("--window", default="1")
@click.option("--burnside-m", type=int, default=1)
@click.option("--witt-ring", default=None)
@click.option("--witt-n", type=int, default=None)
@click.option("--trials", type=int, default=100)
@click.option("--seed", type=int, default=0)
@click.pass_context
@guarded
def axioms(ctx, window, burnside_m, witt_ring, witt_n, trials, seed):
    M = _window_module(window, burnside_m, witt_ring, witt_n)
    report = mackey.check_mackey_axioms(M, trials=trials, seed=seed)
    _emit(ctx, {"ok": report.ok, "checked": report.checked, "failures": report.failures})


@mackey_group.command()
@click.option("--window", default="1")
@click.option("--burnside-m", type=int, default=1)
@click.option("--witt-ring", default=None)
@click.option("--witt-n", type=int, default=None)
@click.option("--level", type=int, default=None, help="default: all levels")
@click.pass_context
@guarded
def gfp(ctx, window, burnside_m, witt_ring, witt_n, level):
    M = _window_module(window, burnside_m, witt_ring, witt_n)
    levels = [level] if level is not None else list(M.window)

    def one(n):
        g = mackey.geometric_fixed_points(M, n)
        torsion, free = g.group.invariants()
        return str(n), {"torsion": torsion, "free_rank": free}

    with ThreadPoolExecutor(max_workers=max_threads()) as pool:
        results = list(pool.map(one, levels))
    _emit(ctx, {"levels": dict(results)})


@mackey_group.command()
@click.option("--window", required=True)
@click.option("--burnside-m", type=int, default=1)
@click.pass_context
@guarded
def conservativity(ctx, window, burnside_m):
    M = mackey.burnside_representable(burnside_m, _trunc(window))
    report = mackey.check_conservativity(M)
    payload = {
        "applicable": report["applicable"],
        "nonzero_levels": report["nonzero_levels"],
    }
    if report["applicable"]:
        payload["transfer_generated"] = report["transfer_generated"]
    _emit(ctx, payload)


@mackey_group.command(name="proper-core")
@click.option("--window", required=True)
@click.option("--burnside-m", type=int, default=1)
@click.pass_context
@guarded
def proper_core(ctx, window, burnside_m):
    M = mackey.burnside_representable(burnside_m, _trunc(window))
    core, trace = mackey.proper_transfer_core(M)
    report = mackey.check_conservativity(core)
    _emit(ctx, {
        "iterations": len(trace),
        "core_ranks": trace[-1],
        "all_gfp_zero": report["all_gfp_zero"],
        "transfer_generated": report.get("transfer_generated"),
    })


@mackey_group.command(name="evaluate-span")
@click.option("--window", default="1")
@click.option("--burnside-m", type=int, default=1)
@click.option("--witt-ring", default=None)
@click.option("--witt-n", type=int, default=None)
@click.option("--span", required=True, help="span a:l:b[:s:t]")
@click.pass_context
@guarded
def evaluate_span_cmd(ctx, window, burnside_m, witt_ring, witt_n, span):
    M = _window_module(window, burnside_m, witt_ring, witt_n)
    h = mackey.evaluate_span(M, _parse_span(span))
    _emit(ctx, {"matrix": h.matrix.to_lists(),
                "source_level": _parse_span(span).target.orbits[0],
                "target_level": _parse_span(span).source.orbits[0]})


@mackey_group.command(name="transfer-sum")
@click.option("--window", default="1")
@click.option("--burnside-m", type=int, default=1)
@click.option("--witt-ring", default=None)
@click.option("--witt-n", type=int, default=None)
@click.option("--family", required=True, help="semicolon list n=c1,c2,... of coordinates")
@click.pass_context
@guarded
def transfer_sum_cmd(ctx, window, burnside_m, witt_ring, witt_n, family):
    M = _window_module(window, burnside_m, witt_ring, witt_n)
    fam = []
    for item in family.split(";"):
        n_text, coords = item.split("=", 1)
        fam.append((int(n_text), _ints(coords)))
    total = mackey.infinite_transfer_sum(M, fam)
    _emit(ctx, {"element": total})


@mackey_group.command()
@click.option("--ngens", type=int, required=True)
@click.option("--relations", default="", help="semicolon rows of comma entries")
@click.option("--action", required=True, help="semicolon rows of the matrix")
@click.option("--order", type=int, required=True)
@click.pass_context
@guarded
def coinvariants(ctx, ngens, relations, action, order):
    rows = [
        _ints(r) for r in relations.split(";") if r.strip()
    ]
    rel = (
        rings.IntMatrix.from_rows(rings.ZZ, rows)
        if rows
        else rings.IntMatrix.zeros(rings.ZZ, 0, ngens)
    )
    act = rings.IntMatrix.from_rows(rings.ZZ, [_ints(r) for r in action.split(";")])
    G = mackey.GroupWithAction(mackey.FPGroup(ngens, rel), act, order)
    quotient = mackey.coinvariants(G)
    torsion, free = quotient.invariants()
    _emit(ctx, {"torsion": torsion, "free_rank": free})


# ---------------------------------------------------------------------- witt


@main.group(name="witt")
def witt_group():
    """Big Witt vectors."""


def _ring_support(ring_text, support_text):
    ring = rings.ring_from_string(ring_text)
    support = _trunc(support_text)
    return ring, support


@witt_group.command()
@click.option("--ring", "ring_", default="Z")
@click.option("--support", required=True)
@click.option("--a", "a_", required=True)
@click.option("--b", "b_", required=True)
@click.pass_context
@guarded
def add(ctx, ring_, support, a_, b_):
    ring, supp = _ring_support(ring_, support)
    c = witt.add(_witt_vector(ring, supp, a_), _witt_vector(ring, supp, b_))
    _emit(ctx, c.to_json())


@witt_group.command()
@click.option("--ring", "ring_", default="Z")
@click.option("--support", required=True)
@click.option("--a", "a_", required=True)
@click.option("--b", "b_", required=True)
@click.pass_context
@guarded
def mul(ctx, ring_, support, a_, b_):
    ring, supp = _ring_support(ring_, support)
    c = witt.multiply(_witt_vector(ring, supp, a_), _witt_vector(ring, supp, b_))
    _emit(ctx, c.to_json())


@witt_group.command()
@click.option("--ring", "ring_", default="Z")
@click.option("--support", required=True)
@click.option("--vec", required=True)
@click.pass_context
@guarded
def ghost(ctx, ring_, support, vec):
    ring, supp = _ring_support(ring_, support)
    g = witt.ghost(_witt_vector(ring, supp, vec))
    _emit(ctx, {"support": supp.to_json(), "ghost": {str(t): ring.show(v) for t, v in g.as_dict().items()}})


@witt_group.command()
@click.option("--ring", "ring_", default="Z")
@click.option("--support", required=True, help="support of the input")
@click.option("--target", required=True, help="support of the output")
@click.option("--n", type=int, required=True)
@click.option("--vec", required=True)
@click.pass_context
@guarded
def ver(ctx, ring_, support, target, n, vec):
    ring, supp = _ring_support(ring_, support)
    out = witt.verschiebung(_witt_vector(ring, supp, vec), n, _trunc(target))
    _emit(ctx, out.to_json())


@witt_group.command()
@click.option("--ring", "ring_", default="Z")
@click.option("--support", required=True)
@click.option("--n", type=int, required=True)
@click.option("--vec", required=True)
@click.pass_context
@guarded
def frob(ctx, ring_, support, n, vec):
    ring, supp = _ring_support(ring_, support)
    out = witt.frobenius(_witt_vector(ring, supp, vec), n)
    _emit(ctx, out.to_json())


@witt_group.command()
@click.option("--ring", "ring_", default="Z")
@click.option("--support", required=True)
@click.option("--r", required=True)
@click.pass_context
@guarded
def teich(ctx, ring_, support, r):
    ring, supp = _ring_support(ring_, support)
    _emit(ctx, witt.teichmuller(ring, ring.parse(r), supp).to_json())


@witt_group.command(name="sum-v")
@click.option("--ring", "ring_", default="Z")
@click.option("--support", required=True)
@click.option("--family", required=True, help="semicolon list n=coeffs, e.g. 2=1:1;3=1:1")
@click.pass_context
@guarded
def sum_v(ctx, ring_, support, family):
    ring, supp = _ring_support(ring_, support)
    fam = []
    for item in family.split(";"):
        n_text, coeffs = item.split("=", 1)
        n = int(n_text)
        fam.append((n, _witt_vector(ring, supp.divide(n), coeffs)))
    out = witt.infinite_verschiebung(ring, fam, supp)
    _emit(ctx, out.to_json())


@witt_group.command()
@click.option("--ring", "ring_", required=True)
@click.option("--N", "--n", "n", type=int, required=True)
@click.pass_context
@guarded
def recover(ctx, ring_, n):
    if n > WINDOW_GUARD:
        raise GuardExceeded(f"window bound is {WINDOW_GUARD}")
    report = witt.recover_base(rings.ring_from_string(ring_), n)
    _emit(ctx, {"invariant_factors": report["invariant_factors"],
                "free_rank": report["free_rank"],
                "matches_base": report["matches_base"]})


@witt_group.command()
@click.option("--ring", "ring_", default="Z")
@click.option("--support", required=True)
@click.option("--box", type=int, default=10)
@click.pass_context
@guarded
def equalizer(ctx, ring_, support, box):
    ring, supp = _ring_support(ring_, support)
    if box > 50 or len(supp) > 6:
        raise GuardExceeded("equalizer enumeration guard: box <= 50, |T| <= 6")
    flow = witt.GhostFlow(ring, {}, supp)
    report = witt.equalizer_report(flow, box)
    _emit(ctx, report)


@witt_group.command(name="as-mackey")
@click.option("--ring", "ring_", required=True)
@click.option("--N", "--n", "n", type=int, required=True)
@click.pass_context
@guarded
def as_mackey(ctx, ring_, n):
    if n > WINDOW_GUARD:
        raise GuardExceeded(f"window bound is {WINDOW_GUARD}")
    M = witt.witt_as_mackey(rings.ring_from_string(ring_), n)
    _emit(ctx, M.to_json())


# ------------------------------------------------------------------------ hh


@main.group(name="hh")
def hh_group():
    """Hochschild homology of labelled cycles."""


def _cycle_from(path):
    return hochschild.LabelledCycle.from_json(json.load(open(path)))


@hh_group.command()
@click.option("--cycle", "cycle_path", required=True)
@click.option("--degree", type=int, required=True)
@click.pass_context
@guarded
def compute(ctx, cycle_path, degree):
    cyc = _cycle_from(cycle_path)
    complex_ = hochschild.bar_complex(cyc, degree)
    _emit(ctx, {
        "dims": list(complex_.dims),
        "boundary_squared_zero": complex_.validate(),
        "homology": hochschild.homology(complex_),
    })


@hh_group.command()
@click.option("--cycle", "cycle_path", required=True)
@click.pass_context
@guarded
def thh0(ctx, cycle_path):
    cyc = _cycle_from(cycle_path)
    if cyc.n != 1:
        raise ValueError("thh0 needs a 1-cycle")
    dim, _ = hochschild.thh_pi0(cyc.algebras[0], cyc.bimodules[0])
    _emit(ctx, {"dimension": dim})


@hh_group.command(name="contract-compare")
@click.option("--cycle", "cycle_path", required=True)
@click.option("--edge", type=int, required=True)
@click.option("--degree", type=int, required=True)
@click.pass_context
@guarded
def contract_compare(ctx, cycle_path, edge, degree):
    cyc = _cycle_from(cycle_path)
    report = hochschild.contraction_comparison(cyc, edge, degree)
    _emit(ctx, report)


@hh_group.command(name="rotate")
@click.option("--cycle", "cycle_path", required=True, help="uniform cycle JSON")
@click.option("--degree", type=int, required=True)
@click.pass_context
@guarded
def rotate_cmd(ctx, cycle_path, degree):
    cyc = _cycle_from(cycle_path)
    report = hochschild.rotation_action(cyc.algebras[0], cyc.bimodules[0], cyc.n, degree)
    _emit(ctx, {
        "commutes_with_boundary": report["commutes_with_boundary"],
        "order_exact": report["order_exact"],
        "homology_dims": report["homology_dims"],
        "homology_action": report["homology_action"],
    })


if __name__ == "__main__":
    main()
