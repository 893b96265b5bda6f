"""A two-cusped manifold whose carried cone is two-dimensional.

Interior classes are fibers: flipping never gets stuck and eventually
cycles.  A class on a boundary ray is not: flipping ends at a surface with
no large branch, and the stable loop read off that surface pairs to zero
with the ray.  That loop is a witness that the ray lies on the boundary of
the dual cone.
"""
import sys

from veerkit import (carried_cone, is_fiber_class, parse_taut_signature, run_duality_check,
                     transversalize)
from veerkit.cones import dot

TOKEN = sys.argv[1] if len(sys.argv) > 1 else "eLMkbcddddedde_2100"
# m203 from the bundled fixtures unless another token is given

tri = parse_taut_signature(TOKEN)
cc = carried_cone(tri)
print(f"{TOKEN}: H1 rank {cc.h1.rank}, projected carried cone rays {cc.projected.rays}")

w = cc.interior_point()
cert = is_fiber_class(tri, w)
print(f"interior point {cc.project(w)}: {cert.verdict}, "
      f"{len(cert.flips)} flips, cycle closes at flip {cert.cycle_start}")

for ray in cc.projected.rays:
    w = min(cc.rays_over(ray), key=sum)
    cert = is_fiber_class(tri, w)
    loop_class = cc.h1.project(transversalize(tri, cert.loop).vector)
    print(f"boundary ray {ray}: {cert.verdict} after {len(cert.flips)} flips; "
          f"carried loop faces {cert.loop.faces}, class {loop_class}, "
          f"pairing with the ray {dot(ray, loop_class)}")

report = run_duality_check(tri, TOKEN, layered=True)
print("loop classes", report.loop_classes)
print("duality:", report.verdict)
