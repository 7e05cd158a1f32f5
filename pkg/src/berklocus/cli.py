"""Command-line interface.

Subcommands operate on a map described by a small declarative input file:

    # comments and blank lines are ignored
    p = 5
    n = 1          # optional tower parameters (default 1)
    k = 1
    num = 0, 1, 1  # coefficients, constant term first, rationals allowed
    den = 1

Exit codes: 0 success, 1 malformed input, 2 the computation needs a field
extension beyond the configured budget, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import fixlocus as fx
from .berkmap import RationalMapK, TypeIIPoint, normalize, reduce_at
from .errors import BerklocusError, IdentityMap, NeedsExtension, ParseError
from .field import INF, PrimeContext
from .residue import Infinity

SCHEMA = "berklocus-report/1"


# ---------------------------------------------------------------------------
# Input parsing
# ---------------------------------------------------------------------------

def _parse_rational(tok: str, line=None, field=None) -> Fraction:
    try:
        return Fraction(tok.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {tok.strip()!r}",
                         line=line, field=field)


def parse_map_file(path: str):
    """Read a map description file; returns (PrimeContext, RationalMapK)."""
    try:
        with open(path) as fh:
            raw = fh.readlines()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}")
    entries = {}
    for ln, text in enumerate(raw, start=1):
        text = text.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ParseError("expected 'key = value'", line=ln)
        key, val = (part.strip() for part in text.split("=", 1))
        if key not in ("p", "n", "k", "num", "den"):
            raise ParseError(f"unknown key {key!r}", line=ln)
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", line=ln)
        entries[key] = (val, ln)
    for req in ("p", "num", "den"):
        if req not in entries:
            raise ParseError(f"missing required key {req!r}")
    ints = {}
    for key, default in (("p", None), ("n", 1), ("k", 1)):
        if key not in entries:
            ints[key] = default
            continue
        val, ln = entries[key]
        try:
            ints[key] = int(val)
        except ValueError:
            raise ParseError(f"not an integer: {val!r}", line=ln, field=key)
    try:
        ctx = PrimeContext(ints["p"], ints["n"], ints["k"])
    except (AssertionError, ValueError) as e:
        raise ParseError(f"bad field parameters: {e}")
    coeffs = {}
    for key in ("num", "den"):
        val, ln = entries[key]
        coeffs[key] = [_parse_rational(tok, line=ln, field=key)
                       for tok in val.split(",")]
    try:
        return ctx, normalize(ctx, coeffs["num"], coeffs["den"])
    except BerklocusError as e:
        raise ParseError(str(e))


def _load_env_config(config: fx.ExploreConfig):
    path = os.environ.get("BERKLOCUS_CONFIG")
    if not path:
        return config
    with open(path) as fh:
        for ln, text in enumerate(fh, start=1):
            text = text.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ParseError("expected 'key = value'", line=ln)
            key, val = (part.strip() for part in text.split("=", 1))
            key = key.replace("-", "_")
            if key not in ("n_max", "k_max", "ray_budget", "seed"):
                raise ParseError(f"unknown config key {key!r}", line=ln)
            try:
                setattr(config, key, int(val, 0))
            except ValueError:
                raise ParseError(f"not an integer: {val!r}", line=ln, field=key)
    return config


def _config_from_args(args) -> fx.ExploreConfig:
    config = _load_env_config(fx.ExploreConfig())
    for attr in ("n_max", "k_max", "ray_budget", "seed"):
        v = getattr(args, attr, None)
        if v is not None:
            setattr(config, attr, v)
    return config


# ---------------------------------------------------------------------------
# Rendering helpers (exact rationals throughout)
# ---------------------------------------------------------------------------

def _s_str(s) -> str:
    if s is INF:
        return "+inf"
    if s is fx.NEG_INF:
        return "-inf"
    return str(s)


def _point_dict(pt: TypeIIPoint) -> dict:
    return {"center": repr(pt.center), "s": str(pt.s)}


def _classical_dict(cp) -> dict:
    return {
        "value": cp.describe(),
        "multiplicity": cp.multiplicity,
        "multiplier_valuation": _s_str(cp.multiplier_valuation),
        "multiplier_residue": (repr(cp.multiplier_residue)
                               if cp.multiplier_residue is not None else None),
        "class": cp.klass,
    }


def _direction_dict(t) -> dict:
    return {
        "location": "inf" if isinstance(t.location, Infinity)
                    else repr(t.location),
        "orbit_size": t.orbit_size,
        "multiplicity": t.multiplicity,
        "multiplier": repr(t.multiplier),
        "critically_fixed": t.critically_fixed,
    }


def _local_dict(local) -> dict:
    return {
        "point": _point_dict(local.point),
        "is_fixed": local.is_fixed,
        "class": local.indifference_class,
        "local_degree": local.local_degree,
        "tangent_map": repr(local.reduced_map) if local.reduced_map else None,
        "fixed_directions": [_direction_dict(t)
                             for t in local.fixed_directions()],
        "surplus_total": local.surplus_total(),
        "n_critically_fixed": local.n_cf,
    }


def _component_dict(c) -> dict:
    return {
        "kind": c.kind,
        "classical_multiplicity": c.classical_multiplicity,
        "classical_points": [_classical_dict(cp) for cp in c.classical_points],
        "alpha": c.alpha,
        "repelling_vertices": [
            {"point": _point_dict(pt), "local_degree": deg,
             "n_critically_fixed": ncf}
            for pt, deg, ncf in c.repelling_vertices],
    }


def _analysis_dict(a: fx.Analysis) -> dict:
    return {
        "schema": SCHEMA,
        "map": repr(a.map),
        "field": {"p": a.map.ctx.p, "n": a.map.ctx.n, "k": a.map.ctx.k},
        "degree": a.map.degree,
        "classical_points": [_classical_dict(cp) for cp in a.classical_points],
        "components": [_component_dict(c) for c in a.components],
        "crucial_points": [
            {"point": _point_dict(cp.point), "weight": cp.weight,
             "fixed": cp.fixed, "detail": {k: str(v) for k, v
                                           in cp.detail.items()}}
            for cp in a.crucial_points],
        "weight_total": a.weight_total,
        "complete_rigorous": a.complete_rigorous,
        "diagnostics": list(a.diagnostics),
    }


def _print_analysis_text(a: fx.Analysis, out):
    ctx = a.map.ctx
    print(f"map: {a.map!r}", file=out)
    print(f"field: E(p={ctx.p}, n={ctx.n}, k={ctx.k})   degree: "
          f"{a.map.degree}", file=out)
    print(f"weight total: {a.weight_total} (degree - 1 = {a.map.degree - 1})"
          f"   complete: {'yes' if a.complete_rigorous else 'NO'}", file=out)
    print("classical fixed points:", file=out)
    for cp in a.classical_points:
        res = f" residue {cp.multiplier_residue!r}" \
            if cp.multiplier_residue is not None else ""
        print(f"  {cp.describe():>24}  mult {cp.multiplicity}  "
              f"val(multiplier) {_s_str(cp.multiplier_valuation)}{res}  "
              f"[{cp.klass}]", file=out)
    print(f"components ({len(a.components)}):", file=out)
    for i, c in enumerate(a.components):
        print(f"  [{i}] {c.kind}: classical multiplicity "
              f"{c.classical_multiplicity}, alpha {c.alpha}", file=out)
        for pt, deg, ncf in c.repelling_vertices:
            print(f"      repelling vertex at {pt!r}: local degree {deg}, "
                  f"{ncf} critically fixed directions", file=out)
    print("crucial points:", file=out)
    for cp in a.crucial_points:
        print(f"  {cp.point!r}  weight {cp.weight}  "
              f"{'fixed' if cp.fixed else 'not fixed'}", file=out)
    for d in a.diagnostics:
        print(f"note: {d}", file=out)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_analyze(args, out) -> int:
    _, f = parse_map_file(args.input)
    a = fx.analyze(f, _config_from_args(args))
    if args.format == "json":
        json.dump(_analysis_dict(a), out, indent=2)
        out.write("\n")
    else:
        _print_analysis_text(a, out)
    return 0


def _point_from_args(ctx, args) -> TypeIIPoint:
    center = ctx.from_rational(_parse_rational(args.center, field="center"))
    s = _parse_rational(args.s, field="s")
    return TypeIIPoint(center, s)


def cmd_reduce_at(args, out) -> int:
    ctx, f = parse_map_file(args.input)
    local = reduce_at(f, _point_from_args(ctx, args))
    if args.format == "json":
        json.dump({"schema": SCHEMA, "local": _local_dict(local)}, out,
                  indent=2)
        out.write("\n")
    else:
        print(f"point: {local.point!r}", file=out)
        print(f"fixed: {'yes' if local.is_fixed else 'no'}   class: "
              f"{local.indifference_class}", file=out)
        print(f"local degree: {local.local_degree}", file=out)
        if local.reduced_map is not None:
            print(f"tangent map: {local.reduced_map!r}", file=out)
        _print_directions(local, out)
    return 0


def _print_directions(local, out):
    dirs = local.fixed_directions()
    if not dirs:
        return
    print("fixed directions of the tangent map:", file=out)
    for t in dirs:
        loc = "oo" if isinstance(t.location, Infinity) else repr(t.location)
        print(f"  at {loc}  orbit size {t.orbit_size}  mult {t.multiplicity}  "
              f"multiplier {t.multiplier!r}"
              f"{'  (critical)' if t.critically_fixed else ''}", file=out)


def cmd_tangent(args, out) -> int:
    ctx, f = parse_map_file(args.input)
    local = reduce_at(f, _point_from_args(ctx, args))
    if not local.is_fixed:
        print("point is not fixed; no tangent fixed directions", file=out)
        return 0
    if local.reduced_map is not None:
        print(f"tangent map: {local.reduced_map!r}  "
              f"[{local.indifference_class}]", file=out)
    _print_directions(local, out)
    return 0


def _tree_data(f, config):
    skeleton = fx.gamma_fix(f, config)
    canon, canon_points = fx._canonical_breakpoints(skeleton)
    nodes = {}
    for cid, (pt, local) in enumerate(canon_points):
        nodes[cid] = {"point": _point_dict(pt), "fixed": local.is_fixed,
                      "class": local.indifference_class}
    edges = []
    for ray in skeleton.rays:
        bps = sorted((bp for bp in ray.breakpoints if bp.local is not None),
                     key=lambda bp: bp.s)
        chain = [canon[(ray.ray_id, bp.s)] for bp in bps]
        for a, b in zip(chain, chain[1:]):
            if a == b:
                continue
            lo = next(bp.s for bp in bps if canon[(ray.ray_id, bp.s)] == a)
            hi = next(bp.s for bp in bps if canon[(ray.ray_id, bp.s)] == b)
            behavior = None
            for seg in ray.segments:
                if seg.s_lo <= lo and hi <= seg.s_hi:
                    behavior = seg.behavior
            edges.append((a, b, _s_str(lo), _s_str(hi), behavior))
        if ray.leaf_idx is not None and chain:
            leaf = skeleton.leaves[ray.leaf_idx]
            edges.append((chain[-1], f"leaf{ray.leaf_idx}", _s_str(bps[-1].s),
                          "+inf", None))
            nodes[f"leaf{ray.leaf_idx}"] = {"leaf": leaf.describe(),
                                            "class": leaf.klass}
    return skeleton, nodes, edges


def cmd_tree(args, out) -> int:
    _, f = parse_map_file(args.input)
    config = _config_from_args(args)
    skeleton, nodes, edges = _tree_data(f, config)
    if args.format == "json":
        json.dump({"schema": SCHEMA,
                   "nodes": {str(k): v for k, v in nodes.items()},
                   "edges": [{"from": str(a), "to": str(b), "s_from": lo,
                              "s_to": hi, "behavior": bh}
                             for a, b, lo, hi, bh in edges]},
                  out, indent=2)
        out.write("\n")
    elif args.format == "dot":
        print("graph fixlocus {", file=out)
        print('  node [shape=ellipse];', file=out)
        for k, v in nodes.items():
            if "leaf" in v:
                label = f"{v['leaf']}\\n[{v['class']}]"
                print(f'  "{k}" [shape=box, label="{label}"];', file=out)
            else:
                pt = v["point"]
                label = f"zeta({pt['center']}, {pt['s']})\\n[{v['class']}]"
                style = ', style=filled, fillcolor=lightgray' \
                    if v["fixed"] else ""
                print(f'  "{k}" [label="{label}"{style}];', file=out)
        for a, b, lo, hi, bh in edges:
            lab = f"s in ({lo}, {hi})" + (f"\\n{bh}" if bh else "")
            print(f'  "{a}" -- "{b}" [label="{lab}"];', file=out)
        print("}", file=out)
    else:
        print(f"skeleton: {len(skeleton.leaves)} classical leaves, "
              f"{len(skeleton.rays)} rays", file=out)
        for k, v in nodes.items():
            if "leaf" in v:
                print(f"  node {k}: classical {v['leaf']} [{v['class']}]",
                      file=out)
            else:
                pt = v["point"]
                print(f"  node {k}: zeta({pt['center']}, s={pt['s']}) "
                      f"[{v['class']}]", file=out)
        for a, b, lo, hi, bh in edges:
            tag = f" ({bh})" if bh else ""
            print(f"  edge {a} -- {b}: s in ({lo}, {hi}){tag}", file=out)
    return 0


def cmd_weights(args, out) -> int:
    _, f = parse_map_file(args.input)
    a = fx.analyze(f, _config_from_args(args))
    if args.format == "json":
        json.dump({"schema": SCHEMA,
                   "weights": [{"point": _point_dict(cp.point),
                                "weight": cp.weight, "fixed": cp.fixed}
                               for cp in a.crucial_points],
                   "total": a.weight_total,
                   "degree": a.map.degree}, out, indent=2)
        out.write("\n")
    else:
        for cp in a.crucial_points:
            print(f"  {cp.point!r}  weight {cp.weight}", file=out)
        print(f"total: {a.weight_total}   degree - 1 = {a.map.degree - 1}",
              file=out)
    return 0


def cmd_verify(args, out) -> int:
    _, f = parse_map_file(args.input)
    config = _config_from_args(args)
    a = fx.analyze(f, config)
    checks = []
    checks.append(("weight formula (total == degree - 1)",
                   a.weight_total == f.degree - 1))
    for i, c in enumerate(a.components):
        if c.kind != fx.KIND_CLASSICAL:
            try:
                fx.theorem_a_count(c)
                checks.append((f"component {i} counting formula", True))
            except AssertionError:
                checks.append((f"component {i} counting formula", False))
        if c.kind == fx.KIND_HYPERBOLIC:
            checks.append((f"component {i} hyperbolic structure",
                           fx.hyperbolic_checks(c)))
        if c.kind == fx.KIND_INDIFFERENT:
            checks.append((f"component {i} indifferent structure",
                           fx.indifferent_checks(c)))
    if f.degree >= 2:
        try:
            fx.connectedness_check(f, config)
            checks.append(("connectedness criterion", True))
        except AssertionError:
            checks.append(("connectedness criterion", False))
        checks.append(("repelling-vertex sum rule",
                       fx.alpha_sum_check(f, config)))
    ok = True
    for name, passed in checks:
        print(f"[{'ok' if passed else 'FAIL'}] {name}", file=out)
        ok = ok and passed
    return 0 if ok else 3


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="berklocus",
        description="Exact fixed-locus certificates for rational maps over "
                    "p-adic fields on the Berkovich projective line.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, point=False):
        sp.add_argument("--input", required=True, help="map description file")
        sp.add_argument("--n-max", type=int, dest="n_max")
        sp.add_argument("--k-max", type=int, dest="k_max")
        sp.add_argument("--ray-budget", type=int, dest="ray_budget")
        sp.add_argument("--seed", type=int, dest="seed")
        if point:
            sp.add_argument("--center", required=True,
                            help="rational center of the disk point")
            sp.add_argument("--s", required=True,
                            help="rational radius parameter (radius p^-s)")

    sp = sub.add_parser("analyze", help="full fixed-locus certificate")
    common(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("reduce-at", help="local data at one disk point")
    common(sp, point=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_reduce_at)

    sp = sub.add_parser("tangent", help="tangent-map fixed directions")
    common(sp, point=True)
    sp.set_defaults(func=cmd_tangent)

    sp = sub.add_parser("tree", help="annotated skeleton of the fixed locus")
    common(sp)
    sp.add_argument("--format", choices=("text", "json", "dot"),
                    default="text")
    sp.set_defaults(func=cmd_tree)

    sp = sub.add_parser("weights", help="crucial points and their weights")
    common(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_weights)

    sp = sub.add_parser("verify", help="run the global structure checks")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except IdentityMap:
        print("error: the identity map fixes the whole line; "
              "there is nothing to analyze", file=sys.stderr)
        return 1
    except NeedsExtension as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BerklocusError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # internal bug, including AssertionError
        print(f"internal error: {e!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
