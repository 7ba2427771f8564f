"""Command-line front end.

    siltgeo <algebra.toml> enumerate|interval|verify-paper [--U complexes.toml]
        [--cap N] [--out report.json] [--dot q.dot] [--svg slice.svg
        --plane "2,1,1,0=1"] [--threads K]

Exit codes: 0 success, 1 verification diff, 2 input error, 3 capability error.
"""
import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources

from . import cpx2, inputs
from . import interval as iv
from . import siltfan as sf
from .cones import svg_slice
from .errors import CapabilityError, InputError, NotPresilting, SiltgeoError

COMMANDS = ("enumerate", "interval", "verify-paper")
DEFAULT_CAP = 10000


def _jsonable(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dumps(obj):
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def parse_plane(text):
    """'2,1,1,0=1' -> ([2, 1, 1, 0], 1)."""
    try:
        lhs, rhs = text.split("=")
        return [Fraction(x) for x in lhs.split(",")], Fraction(rhs)
    except ValueError:
        raise InputError("--plane must look like '2,1,1,0=1', got %r" % text)


def _cap(args):
    if args.cap is not None:
        cap = args.cap
    else:
        env = os.environ.get("SILTGEO_CAP")
        try:
            cap = int(env) if env else DEFAULT_CAP
        except ValueError:
            raise InputError("SILTGEO_CAP must be an integer, got %r" % env)
    if cap <= 0:
        raise InputError("the enumeration cap must be positive")
    return cap


def build_parser():
    p = argparse.ArgumentParser(prog="siltgeo", description="Interval neighbourhoods of 2-term presilting complexes.")
    p.add_argument("args", nargs="+", metavar="ALGEBRA COMMAND",
                   help="algebra TOML file followed by one of: " + ", ".join(COMMANDS))
    p.add_argument("--U", dest="complexes", help="TOML file with the summands of U")
    p.add_argument("--cap", type=int, help="enumeration cap (default $SILTGEO_CAP or 10000)")
    p.add_argument("--out", help="write the JSON report here (default stdout)")
    p.add_argument("--dot", help="write the exchange quiver as DOT")
    p.add_argument("--svg", help="write an SVG drawing")
    p.add_argument("--plane", help="affine slice plane 'c1,...,cn=b' for the SVG")
    p.add_argument("--threads", type=int, default=1, help="worker processes for independent pipelines")
    p.add_argument("--golden", help=argparse.SUPPRESS)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _split_positional(parser, items):
    if items[-1] not in COMMANDS:
        parser.error("last positional argument must be one of: " + ", ".join(COMMANDS))
    if len(items) > 2:
        parser.error("expected ALGEBRA COMMAND")
    command = items[-1]
    algebra = items[0] if len(items) == 2 else None
    if algebra is None and command != "verify-paper":
        parser.error("an algebra file is required for %s" % command)
    return algebra, command


# ---------------------------------------------------------------------------
# commands

def cmd_enumerate(a, cap, args):
    atlas = sf.enumerate_siltings(a, cap)
    report = atlas.to_json()
    report["count"] = len(atlas)
    if args.dot:
        _write(args.dot, sf.to_dot(atlas))
    if args.svg:
        cones = [c for c in sf.gfan(atlas).cones if c.dim == a.n]
        plane = parse_plane(args.plane) if args.plane else (None, 1)
        if plane[0] is None and a.n != 2:
            raise InputError("--plane is required for drawing in dimension %d" % a.n)
        _write(args.svg, svg_slice(cones, plane[0], plane[1]))
    return report, 0


def _check_u(us):
    for k, x in enumerate(us):
        pieces = cpx2.indec_summands(x) if not x.is_zero() else []
        if len(pieces) != 1 or pieces[0][1] != 1:
            raise InputError("summand %d is not indecomposable" % (k + 1))
    if len({x.g_vector for x in us}) != len(us):
        raise InputError("U is not basic")
    if us and not cpx2.is_presilting(cpx2.as_complex(us, us[0].owner)):
        raise NotPresilting("U has self-extensions")


def cmd_interval(a, cap, args):
    us = inputs.load_complexes(a, args.complexes) if args.complexes else []
    _check_u(us)
    ctx = iv.context(a, us, cap)
    if not ctx.atlas.complete:
        raise CapabilityError("siltings containing U exceed the cap %d; raise --cap or SILTGEO_CAP" % cap)
    report = iv.interval_report(ctx)
    if args.svg:
        if not args.plane:
            raise InputError("--svg needs --plane for interval reports")
        normal, level = parse_plane(args.plane)
        faces = [f for f in iv.dcu_cone(ctx).faces() if f.dim == 2]
        _write(args.svg, svg_slice(faces, normal, level))
    return report, 0


# ---------------------------------------------------------------------------
# verification against embedded tables

def _data_text(name):
    return resources.files("siltgeo").joinpath("data", name).read_text(encoding="utf-8")


def _golden(name, golden_dir):
    if golden_dir:
        with open(os.path.join(golden_dir, name), encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(_data_text(name))


def _label_paths(atlas):
    out = {}
    succ = {}
    for arr in atlas.arrows:
        succ.setdefault(arr.src, []).append(arr)
    sinks = [v for v in range(len(atlas)) if v not in succ]

    def walk(v, acc):
        if v in sinks:
            out.setdefault(tuple(acc), None)
            return
        for arr in succ.get(v, []):
            walk(arr.dst, acc + [tuple(arr.label.dimvec)])
    walk(0, [])
    return sorted([list(map(list, p)) for p in out])


def compute_a2():
    a = inputs.algebra_from_text(_data_text("a2.toml"), "a2.toml")
    atlas = sf.enumerate_siltings(a)
    return {"silting_count": len(atlas), "label_paths": _label_paths(atlas)}


def _ids(ix):
    return ",".join(str(i + 1) for i in sorted(ix))


def compute_a4():
    a = inputs.algebra_from_text(_data_text("a4.toml"), "a4.toml")
    us = inputs.complexes_from_text(a, _data_text("a4_u.toml"), "a4_u.toml")
    ctx = iv.context(a, us)
    red = ctx.red
    q = red.b_quiver()
    out = {
        "reduced_algebra": {
            "dim": red.b.dim,
            "quiver_vertices": q.n if q else None,
            "quiver_arrows": sorted([[s + 1, t + 1] for _, s, t in q.arrows]) if q else None,
            "M_dimvecs": [list(m.dimvec) for m in ctx.m_modules()],
        },
        "smc_S": [["+" if s > 0 else "-", list(m.dimvec)] for s, m in red.x_smc.parts],
        "smc_T": [["+" if s > 0 else "-", list(m.dimvec)] for s, m in red.y_smc.parts],
        "semibrick_pairs": [[list(p.dimvec), list(m.dimvec) if m.dim else [0] * a.n]
                            for p, m in iv.semibrick_pair(ctx)],
        "facets": [[f.index + 1, "+" if f.eps > 0 else "-", list(f.label.dimvec)]
                   for f in iv.dcu_inequalities(ctx)],
        "extreme_rays": [list(r) for r in iv.dcu_cone(ctx).rays],
        "face_census": {",".join(str(i) for i in k): {str(d): c for d, c in v.items()}
                        for k, v in iv.face_census(ctx).items()},
    }
    sizes, rays2 = {}, None
    for mask in range(1 << ctx.m):
        ix = [i for i in range(ctx.m) if mask >> i & 1]
        fan = iv.sigma_I(ctx, ix)
        sizes[_ids(ix)] = len(fan)
        if ix == [1]:
            rays2 = [list(c.rays[0]) for c in fan.cones if c.dim == 1]
    out["sigma_sizes"] = sizes
    out["sigma_2_rays"] = rays2
    out["pi"] = [[t, list(ctx.pi(t))] for t in ([0, 1, 0, -1], [0, 1, 0, 0])]
    out["rho"] = [[xi, list(iv.rho(ctx, xi))] for xi in ([1, 0], [0, 1], [-1, 0], [1, -1])]
    out["strongly_convex"] = iv.strong_convexity_split(ctx)[0]
    return out


def _normalize_for_compare(key, value):
    """Order-insensitive views for set-valued entries."""
    if key in ("extreme_rays", "sigma_2_rays", "label_paths"):
        return sorted(_jsonable(value))
    return _jsonable(value)


def diff_values(expected, actual, path=""):
    """List of 'path: expected X, got Y' strings."""
    out = []
    if isinstance(expected, dict) and isinstance(actual, dict):
        for k in sorted(set(expected) | set(actual)):
            sub = "%s.%s" % (path, k) if path else k
            if k not in actual:
                out.append("%s: missing from computed values" % sub)
            elif k not in expected:
                continue
            else:
                e = _normalize_for_compare(k, expected[k])
                a = _normalize_for_compare(k, actual[k])
                out.extend(diff_values(e, a, sub))
        return out
    if isinstance(expected, list) and isinstance(actual, list) and len(expected) == len(actual) \
            and expected and any(isinstance(x, (list, dict)) for x in expected):
        for k, (e, a) in enumerate(zip(expected, actual)):
            out.extend(diff_values(e, a, "%s[%d]" % (path, k)))
        return out
    if _jsonable(expected) != _jsonable(actual):
        out.append("%s: expected %s, got %s" % (path or "<root>", json.dumps(_jsonable(expected)),
                                                 json.dumps(_jsonable(actual))))
    return out


def cmd_verify_paper(args):
    jobs = [("a2_pentagon", compute_a2), ("a4_interval", compute_a4)]
    if args.threads and args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            futs = [pool.submit(fn) for _, fn in jobs]
            results = [f.result() for f in futs]
    else:
        results = [fn() for _, fn in jobs]
    report = {"checks": []}
    status = 0
    for (name, _), actual in zip(jobs, results):
        expected = _golden(name + ".json", args.golden)
        diffs = diff_values(expected, actual)
        report["checks"].append({"name": name, "pass": not diffs, "diffs": diffs, "computed": actual})
        if diffs:
            status = 1
    report["pass"] = status == 0
    return report, status


# ---------------------------------------------------------------------------

def run(argv=None):
    """Run the CLI; returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        algebra_path, command = _split_positional(parser, args.args)
        if args.threads is not None and args.threads <= 0:
            raise InputError("--threads must be positive")
        if command == "verify-paper":
            report, code = cmd_verify_paper(args)
        else:
            cap = _cap(args)
            a = inputs.load_algebra(algebra_path)
            if command == "enumerate":
                report, code = cmd_enumerate(a, cap, args)
            else:
                report, code = cmd_interval(a, cap, args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (CapabilityError, SiltgeoError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    text = dumps(report)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    if code == 1:
        for chk in report.get("checks", []):
            for d in chk["diffs"]:
                print("diff [%s] %s" % (chk["name"], d), file=sys.stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
