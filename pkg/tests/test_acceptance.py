"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""
import random
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import (ACCEPTANCE_LINES, FIGURE_EIGHT, blowup_grid, brute_force_loops,  # noqa: E402
                      fill_or_none, layered_entries, load, random_generators,
                      random_relabeling, small_entries, upward_pole_loops)
from veerkit import (RationalCone, build_boundary, build_stable_track,  # noqa: E402
                     carried_cone, check_veering_rule, enumerate_minimal_stable_loops,
                     fill_even_family, homology_h1, is_fiber_class, pairing,
                     run_duality_check, transversalize, upward_flip, validate_filling)
from veerkit.blowup import Point, brute_force_fill  # noqa: E402
from veerkit.boundary import DOWNWARD, UPWARD, ladder_summary  # noqa: E402
from veerkit.carried import FIBER, NON_FIBER, flippable_tetrahedra, loop_pairing  # noqa: E402
from veerkit.cones import dot  # noqa: E402
from veerkit.homology import DualSpineComplex  # noqa: E402
from veerkit.stable_track import StableLoop, decompose_stable_loop  # noqa: E402

TOKENS = [e.token for e in layered_entries()]


def report(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def loop_classes(tri, h1=None):
    h1 = h1 or homology_h1(tri)
    _, digraph = build_stable_track(tri)
    loops = enumerate_minimal_stable_loops(digraph)
    return loops, [h1.project(transversalize(tri, lp).vector) for lp in loops]


# -- 1 -------------------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    tri = load(FIGURE_EIGHT)
    kinds = Counter(lad.kind for lad in build_boundary(tri).ladders)
    h1 = homology_h1(tri)
    cone = carried_cone(tri, h1).projected
    _, classes = loop_classes(tri, h1)
    loop_cone = RationalCone.from_generators(classes, h1.rank)
    elapsed = time.perf_counter() - start
    checks = {
        "4 faces": tri.num_faces == 4,
        "2 edges of degree 6": [e.degree for e in tri.edges] == [6, 6],
        "1 cusp": tri.num_cusps == 1,
        "2 up + 2 down ladders": kinds == Counter({UPWARD: 2, DOWNWARD: 2}),
        "H1 = Z": (h1.rank, h1.torsion) == (1, ()),
        "cone is one ray": len(cone.rays) == 1 and not cone.lineality,
        "loops span the dual ray": loop_cone == cone.dual() and len(loop_cone.rays) == 1,
        "under 1 s": elapsed < 1,
    }
    bad = [k for k, v in checks.items() if not v]
    return report(1, not bad, f"figure-eight pipeline in {elapsed:.2f}s"
                  + (f"; failed: {', '.join(bad)}" if bad else ""))


# -- 2 -------------------------------------------------------------------------

def criterion_2():
    start = time.perf_counter()
    verdicts = {t: run_duality_check(load(t), t, layered=True).verdict for t in TOKENS}
    elapsed = time.perf_counter() - start
    failed = [t for t, v in verdicts.items() if v != "EQUAL"]
    ok = not failed and len(TOKENS) >= 20 and elapsed < 60
    return report(2, ok, f"{len(TOKENS) - len(failed)}/{len(TOKENS)} layered fixtures EQUAL "
                  f"in {elapsed:.1f}s" + (f"; failed: {failed}" if failed else ""))


# -- 3 -------------------------------------------------------------------------

def criterion_3():
    negative = zero_interior = short_turns = pairs = 0
    for t in TOKENS:
        tri = load(t)
        cc = carried_cone(tri)
        cx = DualSpineComplex.of(tri)
        interior = cc.interior_point()
        _, digraph = build_stable_track(tri)
        for loop in enumerate_minimal_stable_loops(digraph):
            word = transversalize(tri, loop)
            short_turns += min(word.per_turn) < 1
            for ray in cc.weights.rays:
                pairs += 1
                negative += pairing(cx, ray, word) < 0
            zero_interior += pairing(cx, interior, word) <= 0
    ok = not (negative or zero_interior or short_turns)
    return report(3, ok, f"{pairs} loop/ray pairings, {negative} negative; "
                  f"{zero_interior} loops not positive on the ray sum; "
                  f"{short_turns} turns without a crossing")


# -- 4 -------------------------------------------------------------------------

def criterion_4(flips=1000, cycles=100, seed=4):
    rng = random.Random(seed)
    setups = []
    for t in TOKENS[:24]:
        tri = load(t)
        cc = carried_cone(tri)
        cx = cc.h1.complex
        gens = list(cc.h1.generators) + [tuple(col) for col in zip(*cx.d2)]
        zs = []
        for _ in range(cycles):
            z = [0] * tri.num_faces
            for g in gens:
                c = rng.randint(-2, 2)
                z = [x + c * y for x, y in zip(z, g)]
            zs.append(tuple(z))
        setups.append((tri, cc, zs))
    done = broken = 0
    while done < flips:
        tri, cc, zs = rng.choice(setups)
        coeffs = [rng.randint(0, 2) for _ in cc.weights.rays]
        w = tuple(sum(c * x for c, x in zip(coeffs, col)) for col in zip(*cc.weights.rays))
        for _ in range(rng.randint(1, 10)):
            options = flippable_tetrahedra(tri, w)
            if not options or done >= flips:
                break
            after = upward_flip(tri, w, rng.choice(options))
            done += 1
            cx = cc.h1.complex
            same = (sum(after) == sum(w)
                    and cc.project(after) == cc.project(w)
                    and all(pairing(cx, after, z) == pairing(cx, w, z) for z in zs))
            broken += not same
            w = after
    return report(4, not broken, f"{done} random flips, {broken} changed weight, class "
                  f"or a pairing with {cycles} random cycles")


# -- 5 -------------------------------------------------------------------------

def criterion_5():
    fibers = bad_fibers = 0
    rays = bad_rays = 0
    for entry in layered_entries():
        tri = load(entry.token)
        cc = carried_cone(tri)
        cert = is_fiber_class(tri, cc.interior_point())
        fibers += 1
        bad_fibers += not (cert.verdict == FIBER and cert.replay(tri))
        if tri.num_cusps == 2 and cc.projected.dimension == 2:
            h1 = cc.h1
            for ray in cc.projected.rays:
                rays += 1
                w = min(cc.rays_over(ray), key=sum)
                cert = is_fiber_class(tri, w)
                good = cert.verdict == NON_FIBER and cert.replay(tri)
                if good:
                    loop_class = h1.project(transversalize(tri, cert.loop).vector)
                    good = dot(ray, loop_class) == 0 and loop_pairing(tri, cert.terminal, cert.loop) == 0
                bad_rays += not good
    ok = not bad_fibers and not bad_rays and rays > 0
    return report(5, ok, f"{fibers - bad_fibers}/{fibers} interior points certified fibers; "
                  f"{rays - bad_rays}/{rays} boundary rays of 2-cusped fixtures certified "
                  "non-fibers with a loop pairing to 0")


# -- 6 -------------------------------------------------------------------------

def criterion_6(walks=20, seed=6):
    rng = random.Random(seed)
    small = [e.token for e in small_entries(4)]
    mismatched = [t for t in small
                  if {lp.arcs for lp in enumerate_minimal_stable_loops(build_stable_track(load(t))[1])}
                  != brute_force_loops(build_stable_track(load(t))[1])]
    poles = missing = 0
    decomposed = bad_sums = 0
    for t in TOKENS:
        tri = load(t)
        _, digraph = build_stable_track(tri)
        minimal = set(enumerate_minimal_stable_loops(digraph))
        for loop in upward_pole_loops(tri, digraph):
            poles += 1
            missing += loop not in minimal
        h1 = homology_h1(tri)
        for _ in range(walks if tri.n <= 6 else 3):
            face = start = rng.randrange(digraph.num_nodes)
            arcs = []
            while len(arcs) < 40:
                a = rng.choice(digraph.out[face])
                arcs.append(a)
                face = a.target
                if face == start and len(arcs) >= 3:
                    break
            if face != start:
                continue
            loop = StableLoop.from_arcs(arcs)
            pieces = decompose_stable_loop(loop)
            total = [0] * h1.rank
            for p in pieces:
                total = [x + y for x, y in zip(total, h1.project(transversalize(tri, p).vector))]
            decomposed += 1
            bad_sums += not (all(p.is_minimal for p in pieces)
                             and tuple(total) == h1.project(transversalize(tri, loop).vector))
    ok = not mismatched and not missing and not bad_sums and decomposed > 0
    return report(6, ok, f"brute force agrees on {len(small) - len(mismatched)}/{len(small)} "
                  f"fixtures with <= 4 tetrahedra; {poles - missing}/{poles} upward ladderpoles "
                  f"give minimal loops; {decomposed - bad_sums}/{decomposed} decompositions "
                  "preserve the class")


# -- 7 -------------------------------------------------------------------------

def criterion_7():
    total = failed = 0
    for t in TOKENS:
        rep = check_veering_rule(build_boundary(load(t)))
        total += len(rep.checks)
        failed += len(rep.failures)
    return report(7, failed == 0 and total > 0,
                  f"{total - failed}/{total} ladderpole switches have the predicted colour")


# -- 8 -------------------------------------------------------------------------

def criterion_8():
    start = time.perf_counter()
    instances = mismatches = invalid = 0
    for q, p, family in blowup_grid(4, 6):
        instances += 1
        ours = fill_or_none(q, family, p)
        ref = brute_force_fill(q, family, p)
        mismatches += (ours is None) != (ref is None)
        if ours is not None:
            invalid += not validate_filling(ours[0], family, ours[1], p)
    elapsed = time.perf_counter() - start
    two = [Point(0, 0), Point(3, 0)]
    tree, filling = fill_even_family(3, two)
    fig_a = len(filling) == 1 and validate_filling(tree, two, filling)
    four = [Point(k, 0) for k in (0, 3, 4, 7)]
    tree, filling = fill_even_family(4, four, rotation=2)
    fig_b = len(filling) == 2 and tree.is_symmetric(4) and validate_filling(tree, four, filling, 2)
    ok = not mismatches and not invalid and fig_a and fig_b and elapsed < 60
    return report(8, ok, f"{instances} grid instances in {elapsed:.1f}s, {mismatches} disagree "
                  f"with brute force, {invalid} invalid fillings; worked examples "
                  + ("reproduce" if fig_a and fig_b else "do not reproduce"))


# -- 9 -------------------------------------------------------------------------

def signature(tri):
    """Labeling-free summary of every verdict and class."""
    h1 = homology_h1(tri)
    cc = carried_cone(tri, h1)
    loops, classes = loop_classes(tri, h1)
    matrix = [[dot(c, r) for r in cc.projected.rays] for c in classes]
    cols = [list(col) for col in zip(*matrix)]
    weights = [[pairing(h1.complex, r, transversalize(tri, lp)) for r in cc.weights.rays]
               for lp in loops]
    weight_cols = [list(col) for col in zip(*weights)]
    fiber = is_fiber_class(tri, cc.interior_point()).verdict
    return (
        run_duality_check(tri, layered=True).verdict,
        (h1.rank, tuple(sorted(h1.torsion))),
        len(cc.projected.rays), len(cc.weights.rays), len(loops),
        sorted(sorted(r) for r in matrix), sorted(sorted(c) for c in cols),
        sorted(sorted(r) for r in weights), sorted(sorted(c) for c in weight_cols),
        fiber,
    )


def ladder_kinds(tri):
    return [(c["upward"], c["downward"]) for c in ladder_summary(build_boundary(tri))]


def criterion_9(seed=9):
    rng = random.Random(seed)
    tokens = [t for t in TOKENS if len(t.partition("_")[2]) <= 8]
    broken = []
    for t in tokens:
        tri = load(t)
        base = signature(tri)
        tet_perm, vertex_perms = random_relabeling(tri.n, rng)
        if signature(tri.relabeled_canonically(tet_perm, vertex_perms)) != base:
            broken.append((t, "relabel"))
        edges = [e for e in range(tri.num_edges) if rng.random() < 0.5]
        if signature(tri.with_swapped_sides(edges)) != base:
            broken.append((t, "side swap"))
        rev = tri.reversed()
        swapped = [(d, u) for u, d in ladder_kinds(tri)]
        if signature(rev)[:3] != base[:3] or ladder_kinds(rev) != swapped \
                or signature(rev.reversed()) != base:
            broken.append((t, "reversal"))
    return report(9, not broken, f"{len(tokens)} fixtures x (relabel, side swap, reversal): "
                  f"{len(broken)} changed a verdict or class" + (f" {broken}" if broken else ""))


# -- 10 ------------------------------------------------------------------------

def criterion_10(cones=100, seed=10):
    rng = random.Random(seed)
    bad_random = 0
    for _ in range(cones):
        dim, gens = random_generators(rng)
        cone = RationalCone.from_generators(gens, dim)
        dual = cone.dual()
        bad_random += not (dual.dual() == cone and cone.certify() and dual.certify())
    produced = bad_pipeline = 0
    for t in TOKENS:
        tri = load(t)
        h1 = homology_h1(tri)
        cc = carried_cone(tri, h1)
        _, classes = loop_classes(tri, h1)
        for cone in (cc.weights, cc.projected, cc.projected.dual(),
                     RationalCone.from_generators(classes, h1.rank)):
            produced += 1
            bad_pipeline += not cone.certify()
    return report(10, not bad_random and not bad_pipeline,
                  f"double dual exact on {cones - bad_random}/{cones} random cones; "
                  f"{produced - bad_pipeline}/{produced} pipeline cones certified")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
