"""Command line interface and the end-to-end duality check.

Every subcommand writes newline-delimited JSON to stdout (one record per
triangulation or per result); ``--pretty`` switches to indented output.
"""
import argparse
import json
import os
import sys
from dataclasses import dataclass

from .blowup import Point, edge_json, fill_even_family, filling_problems, interval_sign
from .boundary import UPWARD, build_boundary, check_veering_rule, ladder_summary
from .carried import carried_cone, is_fiber_class, upward_flip
from .cones import RationalCone, dot
from ._isosig import decode_isosig
from .errors import NoCoorientation, SchemaError, SignatureError, VeeringError, VeerkitError
from .homology import homology_h1, transversalize
from .stable_track import (build_stable_track, enumerate_minimal_stable_loops,
                           ladderpole_stable_loop)
from .triangulation import (IdealTriangulation, VeeringTriangulation, parse_explicit, parse_taut_signature,
                            read_census, validate_taut, validate_veering)

EQUAL = "EQUAL"
FAIL = "FAIL"


@dataclass(frozen=True)
class DualityReport:
    identifier: str
    layered: bool
    carried_rays: tuple         # extreme rays of the projected carried cone
    carried_lineality: tuple
    loop_classes: tuple         # one class per minimal stable loop
    verdict: str
    loops_outside_dual: tuple   # loop classes pairing negatively with a carried ray
    dual_rays_missed: tuple     # generators of the dual not in the loop cone
    pairings: tuple             # per loop, pairing with every carried ray

    @property
    def informational(self):
        return not self.layered

    def to_json(self):
        return {
            "id": self.identifier,
            "verdict": self.verdict,
            "informational": self.informational,
            "carried_rays": [list(r) for r in self.carried_rays],
            "carried_lineality": [list(r) for r in self.carried_lineality],
            "loop_classes": [list(c) for c in self.loop_classes],
            "witnesses": {
                "loops_outside_dual": [list(c) for c in self.loops_outside_dual],
                "dual_rays_missed": [list(r) for r in self.dual_rays_missed],
            },
            "pairings": [list(p) for p in self.pairings],
        }


def run_duality_check(tri, identifier="", layered=False):
    """Compare the cone spanned by the minimal stable loop classes with the
    dual of the carried cone."""
    h1 = homology_h1(tri)
    cone = carried_cone(tri, h1).projected
    _, digraph = build_stable_track(tri)
    loops = enumerate_minimal_stable_loops(digraph)
    classes = sorted({h1.project(transversalize(tri, lp).vector) for lp in loops})
    carried_gens = cone.generators
    pairings = tuple(tuple(dot(c, r) for r in cone.rays) for c in classes)
    outside = tuple(c for c in classes if any(dot(c, g) < 0 for g in carried_gens))
    dual = cone.dual()
    if classes:
        loop_cone = RationalCone.from_generators(classes, h1.rank)
        missed = tuple(g for g in dual.generators if not loop_cone.contains(g))
        ok = not outside and not missed
    else:
        missed = dual.generators
        ok = False
    return DualityReport(
        identifier=identifier,
        layered=layered,
        carried_rays=cone.rays,
        carried_lineality=cone.lineality,
        loop_classes=tuple(classes),
        verdict=EQUAL if ok else FAIL,
        loops_outside_dual=outside,
        dual_rays_missed=missed,
        pairings=pairings,
    )


def _is_layered_comment(comment):
    return "layered" in comment.split()


def run_batch(text, assume_layered=False):
    """Yield one record per census entry, in input order."""
    for entry in read_census(text):
        layered = assume_layered or _is_layered_comment(entry.comment)
        try:
            tri = parse_taut_signature(entry.token)
            report = run_duality_check(tri, entry.token, layered)
            yield report.to_json()
        except VeerkitError as exc:
            yield {"id": entry.token, "line": entry.line,
                   "error": type(exc).__name__, "message": str(exc)}


def batch_exit_code(records):
    for rec in records:
        if "error" in rec:
            return 1
        if rec["verdict"] != EQUAL and not rec["informational"]:
            return 1
    return 0


# -- argument handling -------------------------------------------------------

def load_triangulation(source, *, unstable=False):
    """A signature token, or a path to a JSON document."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            tri = parse_explicit(fh.read())
    else:
        tri = parse_taut_signature(source)
    return tri.reversed() if unstable else tri


def _int_list(text):
    return [int(x) for x in text.replace(",", " ").split()]


def parse_family(text):
    """``"0:-,3:+"`` -> points; ordinals count repeats within an interval.

    The sign after each interval is optional; when given it must agree with
    the interval's orientation.
    """
    points = []
    seen = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        k, _, sign = item.partition(":")
        k = int(k)
        if sign:
            want = {"+": 1, "-": -1}.get(sign)
            if want is None or want != interval_sign(k):
                raise ValueError(f"interval {k} has sign {'+' if interval_sign(k) > 0 else '-'}")
        points.append(Point(k, seen.get(k, 0)))
        seen[k] = seen.get(k, 0) + 1
    return points


def ascii_star(tree, filling):
    """A plain listing of the circle: leaves, intervals and segment ends."""
    ends = {}
    for i, seg in enumerate(filling.segments):
        for p in (seg.start, seg.end):
            ends.setdefault(p.interval, []).append(f"s{i}")
    parts = []
    for k in range(tree.num_leaves):
        arrow = "->" if k % 2 == 0 else "<-"
        parts.append(f"[leaf {k} {arrow}]")
        mark = " ".join(ends.get(k, []))
        parts.append(f"({'+' if interval_sign(k) > 0 else '-'}{' ' + mark if mark else ''})")
    lines = [" ".join(parts)]
    for i, seg in enumerate(filling.segments):
        crossed = ", ".join(json.dumps(edge_json(e)) for e in seg.crossings)
        lines.append(f"s{i}: {tuple(seg.start)} -> {tuple(seg.end)} across {crossed}")
    return "\n".join(lines)


def load_ideal(source):
    """Like :func:`load_triangulation` but without requiring tautness."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"not JSON: {exc}") from None
        try:
            table = [[(g[0], tuple(int(c) for c in g[1])) for g in row] for row in doc["gluings"]]
            return IdealTriangulation(table, doc["pi_pair"])
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise SchemaError(f"malformed document: {exc}") from None
    sig, sep, angles = source.strip().partition("_")
    if not sep or not angles.isdigit() or any(c not in "012" for c in angles):
        raise SignatureError(f"{source!r} is not of the form isoSig_angles")
    table = decode_isosig(sig)
    if len(table) != len(angles):
        raise SignatureError(f"{len(angles)} angle digits for {len(table)} tetrahedra")
    return IdealTriangulation(table, [int(c) for c in angles])


def _cmd_validate(args):
    ideal = load_ideal(args.input)
    report = validate_taut(ideal)
    out = {"taut": report.ok, "failures": report.failures(),
           "transverse": False, "veering": False}
    if report.ok:
        try:
            VeeringTriangulation(ideal.gluings, ideal.pi_pair)
            out["transverse"] = out["veering"] = True
        except NoCoorientation as exc:
            out["failures"].append(str(exc))
        except VeeringError as exc:
            out["transverse"] = True
            out["failures"].append(str(exc))
        try:
            out["colors"] = list(validate_veering(ideal))
        except VeeringError:
            pass
    return [out], 0 if not out["failures"] else 1


def _cmd_info(args):
    tri = load_triangulation(args.input, unstable=args.unstable)
    h1 = homology_h1(tri)
    out = tri.summary()
    out.update({"betti": h1.rank, "torsion": list(h1.torsion)})
    return [out], 0


def _cmd_ladders(args):
    tri = load_triangulation(args.input, unstable=args.unstable)
    boundary = build_boundary(tri)
    rule = check_veering_rule(boundary)
    return [{"cusps": ladder_summary(boundary), "veering_rule": rule.ok,
             "euler_characteristics": list(boundary.euler_characteristics().values())}], 0


def _cmd_stable_loops(args):
    tri = load_triangulation(args.input, unstable=args.unstable)
    _, digraph = build_stable_track(tri)
    if args.minimal:
        loops = enumerate_minimal_stable_loops(digraph)
        return [{"minimal_loops": [lp.to_json() for lp in loops]}], 0
    boundary = build_boundary(tri)
    poles = []
    for ladder in boundary.ladders:
        if ladder.kind != UPWARD:
            continue
        for side, branches in (("left", ladder.left_pole_branches),
                               ("right", ladder.right_pole_branches)):
            poles.append({"ladder": ladder.index, "pole": side,
                          "loop": ladderpole_stable_loop(digraph, branches).to_json()})
    return [{"arcs": [list(a) for a in digraph.arcs], "ladderpole_loops": poles}], 0


def _cmd_homology(args):
    tri = load_triangulation(args.input, unstable=args.unstable)
    h1 = homology_h1(tri)
    return [{"betti": h1.rank, "torsion": list(h1.torsion),
             "d1": [list(r) for r in h1.complex.d1],
             "d2": [list(r) for r in h1.complex.d2],
             "generators": [list(z) for z in h1.generators]}], 0


def _cmd_carried_cone(args):
    tri = load_triangulation(args.input, unstable=args.unstable)
    cc = carried_cone(tri)
    out = cc.to_json()
    out["certified"] = cc.weights.certify() and cc.projected.certify()
    return [out], 0


def _weights_or_interior(tri, text):
    if text:
        return tuple(_int_list(text))
    return carried_cone(tri).interior_point()


def _cmd_flip(args):
    tri = load_triangulation(args.input, unstable=args.unstable)
    w = _weights_or_interior(tri, args.weights)
    return [{"before": list(w), "tetra": args.tetra,
             "after": list(upward_flip(tri, w, args.tetra))}], 0


def _cmd_is_fiber(args):
    tri = load_triangulation(args.input, unstable=args.unstable)
    w = _weights_or_interior(tri, args.weights)
    cert = is_fiber_class(tri, w)
    out = cert.to_json()
    out["replays"] = cert.replay(tri)
    return [out], 0


def _cmd_dual_check(args):
    tri = load_triangulation(args.input, unstable=args.unstable)
    report = run_duality_check(tri, args.input, args.assume_layered)
    code = 0 if report.verdict == EQUAL or report.informational else 1
    return [report.to_json()], code


def _cmd_blowup(args):
    family = parse_family(args.family)
    rotation = args.rotation or None
    tree, filling = fill_even_family(args.prongs, family, rotation)
    problems = filling_problems(tree, family, filling, rotation)
    out = {"tree": tree.to_json(), "segments": filling.to_json(),
           "blowups": len(tree.splits), "valid": not problems, "problems": problems}
    if args.ascii:
        out["ascii"] = ascii_star(tree, filling)
    return [out], 0 if not problems else 1


def _cmd_batch(args):
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    records = list(run_batch(text, args.assume_layered))
    return records, batch_exit_code(records)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="veerkit", description="Exact computations on transverse taut veering triangulations.")
    parser.add_argument("--pretty", action="store_true", help="indented JSON")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="indented JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def tri_command(name, func, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("input", help="isoSig_angles token or path to a JSON document")
        p.add_argument("--unstable", action="store_true",
                       help="work with the global coorientation reversed")
        p.set_defaults(func=func)
        return p

    p = sub.add_parser("validate", parents=[common], help="tautness and veering checks")
    p.add_argument("input")
    p.set_defaults(func=_cmd_validate)
    tri_command("info", _cmd_info, "counts, colours and homology")
    tri_command("ladders", _cmd_ladders, "ladders of every cusp torus")
    p = tri_command("stable-loops", _cmd_stable_loops, "stable digraph and stable loops")
    p.add_argument("--minimal", action="store_true", help="enumerate the minimal loops")
    tri_command("homology", _cmd_homology, "H1 and the dual spine matrices")
    tri_command("carried-cone", _cmd_carried_cone, "cone of carried weight vectors")
    p = tri_command("flip", _cmd_flip, "one upward flip")
    p.add_argument("--tetra", type=int, required=True)
    p.add_argument("--weights", help="face weights (default: interior carried point)")
    p = tri_command("is-fiber", _cmd_is_fiber, "fiber detection by flipping")
    p.add_argument("--weights", help="face weights (default: interior carried point)")
    p = tri_command("dual-check", _cmd_dual_check, "loop cone versus dual carried cone")
    p.add_argument("--assume-layered", action="store_true")
    p = sub.add_parser("blowup", parents=[common], help="fill an even family over a blown-up star")
    p.add_argument("--prongs", type=int, required=True)
    p.add_argument("--rotation", type=int, default=0, help="rotation by 2*pi*p/q")
    p.add_argument("--family", required=True, help="comma list of interval[:sign]")
    p.add_argument("--ascii", action="store_true")
    p.set_defaults(func=_cmd_blowup)
    p = sub.add_parser("batch", parents=[common], help="duality check for every entry of a census file")
    p.add_argument("file")
    p.add_argument("--assume-layered", action="store_true")
    p.set_defaults(func=_cmd_batch)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        records, code = args.func(args)
    except (VeerkitError, ValueError, OSError) as exc:
        records, code = [{"error": type(exc).__name__, "message": str(exc)}], 2
    for rec in records:
        if args.pretty:
            print(json.dumps(rec, indent=2, sort_keys=True))
        else:
            print(json.dumps(rec, sort_keys=True, separators=(",", ":")))
    return code


if __name__ == "__main__":
    sys.exit(main())
