"""Carried surfaces: the weight cone, upward flips, fiber detection and
stable loops read off unflippable surfaces.

A weight vector assigns a nonnegative integer to every face.  It is carried
when, at every edge, the weights on the two sides agree (counted once per
incidence).  An upward flip across tetrahedron ``t`` moves one sheet off
its two bottom faces onto its two top faces.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

from .cones import RationalCone, primitive
from .errors import Flippable, NotCarried, NotFlippable
from .homology import homology_h1, pairing, transversalize
from .stable_track import StableLoop, build_stable_track

FIBER = "fiber"
NON_FIBER = "non-fiber"
EMPTY = "empty"


def branch_equations(tri):
    """One row per edge: +1 per side-A incidence, -1 per side-B incidence."""
    rows = []
    for edge in tri.edges:
        row = [0] * tri.num_faces
        for inc in edge.side_a:
            row[inc.face] += 1
        for inc in edge.side_b:
            row[inc.face] -= 1
        rows.append(tuple(row))
    return rows


def is_carried(tri, w):
    if len(w) != tri.num_faces or any(x < 0 for x in w):
        return False
    return all(sum(a * x for a, x in zip(row, w)) == 0 for row in branch_equations(tri))


def _require_carried(tri, w):
    if len(w) != tri.num_faces:
        raise NotCarried(f"expected {tri.num_faces} weights, got {len(w)}")
    if any(x < 0 for x in w):
        raise NotCarried("weights must be nonnegative")
    for e, row in enumerate(branch_equations(tri)):
        if sum(a * x for a, x in zip(row, w)):
            raise NotCarried(f"branch equation fails at edge {e}")


def clear_denominators(v):
    """Smallest positive integer multiple of a rational vector."""
    v = [Fraction(x) for x in v]
    m = lcm(*(x.denominator for x in v)) if v else 1
    return tuple(int(x * m) for x in v)


@dataclass(frozen=True)
class CarriedCone:
    weights: RationalCone        # in face coordinates
    projected: RationalCone      # in the coordinates dual to the H1 generators
    ray_images: tuple            # (weight ray, its projection)
    h1: object = field(repr=False, compare=False)

    def project(self, w):
        return self.h1.evaluate(w)

    def interior_point(self):
        """Sum of all weight-space extreme rays, an integral carried vector
        that is positive on every face some carried vector touches."""
        rays = self.weights.rays
        if not rays:
            return (0,) * self.weights.dim
        return tuple(sum(col) for col in zip(*rays))

    def rays_over(self, projected_ray):
        """Weight rays whose projection lies on ``projected_ray``."""
        target = primitive(projected_ray)
        return tuple(r for r, img in self.ray_images if any(img) and primitive(img) == target)

    def to_json(self):
        return {
            "weight_rays": [list(r) for r in self.weights.rays],
            "projected": self.projected.to_json(),
            "ray_images": [[list(r), list(img)] for r, img in self.ray_images],
        }


def carried_cone(tri, h1=None):
    """The cone of carried weight vectors and its image in cohomology."""
    h1 = h1 or homology_h1(tri)
    n = tri.num_faces
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    weights = RationalCone.from_constraints(n, inequalities=unit,
                                            equations=branch_equations(tri))
    if weights.lineality:
        raise NotCarried("weight cone has lineality; nonnegativity must cut it out")
    images = tuple((r, h1.evaluate(r)) for r in weights.rays)
    projected = RationalCone.from_generators([img for _, img in images], h1.rank)
    return CarriedCone(weights, projected, images, h1)


# -- flips -----------------------------------------------------------------

def flippable_tetrahedra(tri, w):
    return tuple(t for t in range(tri.n) if all(w[f] >= 1 for f in tri.tet_bottom_faces(t)))


def _flip(tri, w, t):
    out = list(w)
    for f in tri.tet_bottom_faces(t):
        out[f] -= 1
    for f in tri.tet_top_faces(t):
        out[f] += 1
    return tuple(out)


def upward_flip(tri, w, t):
    """Push one sheet of ``w`` up across tetrahedron ``t``."""
    _require_carried(tri, w)
    if not 0 <= t < tri.n:
        raise NotFlippable(f"no tetrahedron {t}")
    if any(w[f] < 1 for f in tri.tet_bottom_faces(t)):
        raise NotFlippable(f"a bottom face of tetrahedron {t} has weight 0")
    return _flip(tri, w, t)


@dataclass(frozen=True)
class FlipCertificate:
    verdict: str
    start: tuple
    flips: tuple               # tetrahedra in flip order
    cycle_start: int = None    # fiber: index into ``flips`` where the cycle begins
    terminal: tuple = None     # non-fiber: the unflippable end vector
    loop: StableLoop = None    # non-fiber: a stable loop carried by the end surface

    @property
    def is_fiber(self):
        return self.verdict == FIBER

    def states(self, tri):
        out = [self.start]
        for t in self.flips:
            out.append(upward_flip(tri, out[-1], t))
        return out

    def replay(self, tri):
        """Re-run the recorded flips and check the certificate's claim."""
        try:
            states = self.states(tri)
        except (NotFlippable, NotCarried):
            return False
        if self.verdict == FIBER:
            return (self.cycle_start is not None and self.cycle_start < len(self.flips)
                    and states[self.cycle_start] == states[-1])
        if states[-1] != self.terminal or flippable_tetrahedra(tri, self.terminal):
            return False
        if self.verdict == EMPTY:
            return not any(self.terminal)
        return self.loop is not None

    def to_json(self):
        out = {"verdict": self.verdict, "start": list(self.start), "flips": list(self.flips)}
        if self.cycle_start is not None:
            out["cycle_start"] = self.cycle_start
        if self.terminal is not None:
            out["terminal"] = list(self.terminal)
        if self.loop is not None:
            out["loop"] = self.loop.to_json()
        return out


def is_fiber_class(tri, w):
    """Decide whether the carried surface ``w`` is infinitely flippable.

    Every face is a bottom face of exactly one tetrahedron, so a flip never
    lowers a weight another tetrahedron needs: flips stay enabled once
    enabled and commute.  Either every maximal flip sequence is infinite or
    all of them stop, so one greedy walk decides.  Total weight is fixed,
    hence the walk either revisits a vector (fiber) or gets stuck.
    """
    w = tuple(w)
    _require_carried(tri, w)
    if not any(w):
        return FlipCertificate(EMPTY, w, (), terminal=w)
    seen = {w: 0}
    flips = []
    state = w
    while True:
        options = flippable_tetrahedra(tri, state)
        if not options:
            break
        t = options[0]
        state = _flip(tri, state, t)
        flips.append(t)
        if state in seen:
            return FlipCertificate(FIBER, w, tuple(flips), cycle_start=seen[state])
        seen[state] = len(flips)
    loop = extract_stable_loop(reconstruct_sheets(tri, state))
    return FlipCertificate(NON_FIBER, w, tuple(flips), terminal=state, loop=loop)


# -- sheets ------------------------------------------------------------------

@dataclass(frozen=True)
class Sheet:
    face: int
    index: int     # height within the face, counted upward


class CarriedSurface:
    """The surface carried by an integral weight vector, one triangle per
    sheet, glued along the edges of the triangulation."""

    def __init__(self, tri, w):
        _require_carried(tri, w)
        self.tri = tri
        self.weights = tuple(w)
        self.sheets = tuple(Sheet(f, i) for f, x in enumerate(w) for i in range(x))
        # (sheet, slot) <-> (sheet, slot)
        match = {}
        self.stacks = []
        for edge in tri.edges:
            stacks = tuple(
                tuple((Sheet(inc.face, i), inc.opposite)
                      for inc in side for i in range(w[inc.face]))
                for side in (edge.side_a, edge.side_b)
            )
            if len(stacks[0]) != len(stacks[1]):
                raise NotCarried(f"stacks at edge {edge.index} differ in length")
            for a, b in zip(*stacks):
                match[a] = b
                match[b] = a
            self.stacks.append(stacks)
        self.match = match

    @property
    def total_weight(self):
        return len(self.sheets)

    @cached_property
    def components(self):
        parent = {s: s for s in self.sheets}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (s, _), (u, _) in self.match.items():
            a, b = find(s), find(u)
            if a != b:
                parent[max(a, b, key=lambda x: (x.face, x.index))] = min(
                    a, b, key=lambda x: (x.face, x.index))
        groups = {}
        for s in self.sheets:
            groups.setdefault(find(s), []).append(s)
        return tuple(tuple(g) for _, g in sorted(groups.items(), key=lambda kv: (kv[0].face, kv[0].index)))

    def cell_counts(self):
        """(ideal vertices, edges, triangles) of the sheet complex.

        Ideal vertices are orbits of triangle corners under the edge
        gluings; they are punctures of the carried surface.
        """
        triangles = len(self.sheets)
        edges = len(self.match) // 2
        corner_parent = {}

        def find(x):
            while corner_parent[x] != x:
                corner_parent[x] = corner_parent[corner_parent[x]]
                x = corner_parent[x]
            return x

        for s in self.sheets:
            for v in self._face_vertices(s.face):
                corner_parent[(s, v)] = (s, v)
        for (s, k), (u, m) in self.match.items():
            # side k of sheet s joins side m of sheet u; pair their ends
            for v in self._face_vertices(s.face):
                if v == k:
                    continue
                a = find((s, v))
                b = find((u, self._corner_map(s.face, k, u.face, m, v)))
                if a != b:
                    corner_parent[a] = b
        vertices = len({find(x) for x in corner_parent})
        return vertices, edges, triangles

    def _face_vertices(self, f):
        (_, k), _ = self.tri.face_reps[f]
        return tuple(v for v in range(4) if v != k)

    def _end(self, f, k, v):
        """End of the edge opposite ``k`` in face ``f`` at which vertex ``v``
        sits."""
        (t, _), _ = self.tri.face_reps[f]
        other = next(x for x in self._face_vertices(f) if x not in (k, v))
        return self.tri.edge_of[(t, v, other)][1]

    def _corner_map(self, f, k, g, m, v):
        """Vertex of face ``g`` meeting the ideal vertex ``v`` of face ``f``
        across the edge where side ``k`` of ``f`` meets side ``m`` of ``g``."""
        end = self._end(f, k, v)
        return next(x for x in self._face_vertices(g) if x != m and self._end(g, m, x) == end)

    def euler_characteristic(self):
        """Of the open (punctured) surface: triangles minus edges."""
        _, edges, triangles = self.cell_counts()
        return triangles - edges

    def large_branches(self):
        """Edges at which two large half-branches of sheets are matched."""
        track_large = [face.large for face in self.tri.faces]
        out = []
        for e, (side_a, side_b) in enumerate(self.stacks):
            for (s, v), (u, m) in zip(side_a, side_b):
                if track_large[s.face] == v and track_large[u.face] == m:
                    out.append(e)
        return tuple(out)

    def flippable_tetrahedra(self):
        return tuple(sorted({self.tri.edges[e].top_tetra for e in self.large_branches()}))


def reconstruct_sheets(tri, w):
    return CarriedSurface(tri, w)


def extract_stable_loop(surface, digraph=None):
    """A stable loop carried by an unflippable surface.

    From any sheet leave along its large half-branch; the sheet reached is
    entered through a small half-branch, and the walk repeats.  The walk is
    eventually periodic; read backward, its period is a cycle of the
    stable digraph.
    """
    if surface.large_branches():
        raise Flippable("the surface has a large branch; flip it first")
    if not surface.sheets:
        raise NotCarried("the empty surface carries no loop")
    tri = surface.tri
    if digraph is None:
        _, digraph = build_stable_track(tri)
    large = [face.large for face in tri.faces]
    seen = {}
    walk = []
    cur = surface.sheets[0]
    while cur not in seen:
        seen[cur] = len(walk)
        nxt, slot = surface.match[(cur, large[cur.face])]
        walk.append((cur, nxt, slot))
        cur = nxt
    period = walk[seen[cur]:]
    arcs = [digraph.arc(nxt.face, slot) for _, nxt, slot in period]
    for a, (sheet, _, _) in zip(arcs, period):
        if a.target != sheet.face:
            raise NotCarried("walk does not follow the stable digraph")
    return StableLoop.from_arcs(arcs[::-1])


def loop_pairing(tri, w, loop):
    h1 = homology_h1(tri)
    return pairing(h1.complex, w, transversalize(tri, loop))
