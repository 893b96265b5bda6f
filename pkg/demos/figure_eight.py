"""Walk the figure-eight knot complement through the whole pipeline.

The two-tetrahedron veering triangulation is small enough to check every
number by hand: four faces, two edges, one cusp torus cut into four
ladders, H1 = Z, and a carried cone that is a single ray.
"""
from veerkit import (build_boundary, build_stable_track, carried_cone,
                     enumerate_minimal_stable_loops, homology_h1, is_fiber_class,
                     parse_taut_signature, run_duality_check, transversalize)
from veerkit.boundary import ladder_summary

TOKEN = "cPcbbbiht_12"

tri = parse_taut_signature(TOKEN)
print(f"{TOKEN}: {tri.n} tetrahedra, {tri.num_faces} faces, {tri.num_edges} edges, "
      f"{tri.num_cusps} cusp")
print("edge degrees", [e.degree for e in tri.edges], "colours", tri.colors)

for cusp in ladder_summary(build_boundary(tri)):
    print(f"cusp {cusp['cusp']}: {cusp['upward']} upward and {cusp['downward']} downward ladders")

h1 = homology_h1(tri)
print(f"H1 has rank {h1.rank} and torsion {list(h1.torsion)}")

cc = carried_cone(tri, h1)
print("carried weight rays", cc.weights.rays)
print("their classes", [img for _, img in cc.ray_images], "-> cone", cc.projected.rays)

_, digraph = build_stable_track(tri)
loops = enumerate_minimal_stable_loops(digraph)
print(f"{len(loops)} minimal stable loops:")
for loop in loops:
    word = transversalize(tri, loop)
    print(f"  faces {loop.faces} crosses {word.crossings}, class {h1.project(word.vector)}")

report = run_duality_check(tri, TOKEN, layered=True)
print("loop cone vs dual of the carried cone:", report.verdict)

w = cc.interior_point()
cert = is_fiber_class(tri, w)
print(f"weights {w}: {cert.verdict} after flips {cert.flips}, replays: {cert.replay(tri)}")
