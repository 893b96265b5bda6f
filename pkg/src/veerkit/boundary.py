"""Boundary tori by flat triangles, ladders and the boundary train track.

Each tetrahedron meets the cusp tori in four flat triangles, one per ideal
vertex.  A flat triangle at vertex ``v`` is *upward* when ``v`` is an end of
the top pi-edge.  Its corners are the edges through ``v`` (the switches of
the boundary track) and its sides are the faces through ``v`` (the
branches).

Every branch carries the coorientation of its face.  With the torus
oriented by the inward normal, the *left* switch of a branch is the end at
which the pair (branch direction, coorientation) stops being positive; the
branch itself is oriented from its right switch to its left switch.
"""
from collections import defaultdict, namedtuple
from dataclasses import dataclass
from functools import cached_property

from .errors import StructureError
from .triangulation import LEFT, RIGHT

UPWARD = "up"
DOWNWARD = "down"

# A side of a flat triangle: face ``face`` near the ideal vertex ``vertex``
# (both in the coordinates of the face's representative slot).
Branch = namedtuple("Branch", "face vertex")

# A switch: end ``end`` (0 or 1) of edge ``edge``.
Switch = namedtuple("Switch", "edge end")


@dataclass(frozen=True)
class FlatTriangle:
    tet: int
    vertex: int
    kind: str
    cusp: int
    pi_corner: int
    # corner vertex w -> switch of the edge {vertex, w}
    corners: tuple
    # face slot k -> branch
    sides: tuple


@dataclass(frozen=True)
class BranchData:
    branch: Branch
    triangles: tuple      # the two flat triangles it separates
    right: Switch
    left: Switch
    rung: bool
    # face incidences (opposite vertex, representative coordinates) at
    # the right and left switches
    right_slot: int
    left_slot: int


@dataclass(frozen=True)
class Ladder:
    index: int
    cusp: int
    kind: str
    triangles: tuple
    rungs: tuple
    left_pole: tuple      # switches in cyclic order
    right_pole: tuple
    # branch records; branch i runs from switch i to switch i + 1
    left_pole_branches: tuple
    right_pole_branches: tuple


class BoundaryComplex:
    """Flat triangles of a veering triangulation grouped into cusp tori."""

    def __init__(self, tri):
        self.tri = tri
        triangles = []
        for t in range(tri.n):
            for v in range(4):
                kind = UPWARD if v in tri.top_edge[t] else DOWNWARD
                partner = next(
                    w for w in range(4) if w != v and tri.is_pi(t, v, w)
                )
                corners = tuple(
                    (w, Switch(*tri.edge_of[(t, v, w)])) for w in range(4) if w != v
                )
                sides = tuple(
                    (k, Branch(*tri.incidence(t, k, v))) for k in range(4) if k != v
                )
                triangles.append(FlatTriangle(t, v, kind, tri.cusp_of[(t, v)],
                                              partner, corners, sides))
        self.triangles = tuple(triangles)

    def triangle(self, t, v):
        return self.triangles[4 * t + v]

    @cached_property
    def branches(self):
        """Every branch with its two triangles, switches and type."""
        tri = self.tri
        sides = defaultdict(list)
        for tr in self.triangles:
            for k, b in tr.sides:
                sides[b].append((tr.tet, tr.vertex))
        out = {}
        for b in sorted(sides):
            pair = tuple(sides[b])
            if len(pair) != 2:
                raise StructureError(f"branch {b} borders {len(pair)} flat triangles")
            (t, k), _ = tri.face_reps[b.face]
            v = b.vertex
            w1, w2 = (w for w in range(4) if w not in (k, v))
            sgn = 1 if tri.is_positive(t, (v, w1, w2, k)) else -1
            top = 1 if tri.is_top_slot(t, k) else -1
            left_w, right_w = (w2, w1) if sgn * top == 1 else (w1, w2)
            left = Switch(*tri.edge_of[(t, v, left_w)])
            right = Switch(*tri.edge_of[(t, v, right_w)])
            kinds = {self.triangle(*x).kind for x in pair}
            out[b] = BranchData(b, pair, right, left, len(kinds) == 1,
                                right_slot=left_w, left_slot=right_w)
        return out

    @cached_property
    def cusps(self):
        """Per cusp: (switches, branches, triangles)."""
        data = defaultdict(lambda: (set(), set(), []))
        for tr in self.triangles:
            sw, br, trs = data[tr.cusp]
            trs.append((tr.tet, tr.vertex))
            sw.update(s for _, s in tr.corners)
            br.update(b for _, b in tr.sides)
        return {c: (frozenset(sw), frozenset(br), tuple(trs)) for c, (sw, br, trs) in data.items()}

    def euler_characteristics(self):
        return {
            c: len(sw) - len(br) + len(trs) for c, (sw, br, trs) in sorted(self.cusps.items())
        }

    @cached_property
    def ladders(self):
        return decompose_ladders(self)


def build_boundary(tri):
    return BoundaryComplex(tri)


def _cyclic_pole(branch_data, switch_set, label):
    """Order a ladderpole as a directed cycle following branch orientation."""
    nxt = {}
    for bd in branch_data:
        if bd.right in nxt:
            raise StructureError(f"{label} branches do not form an oriented circle")
        nxt[bd.right] = (bd.left, bd)
    if set(nxt) != set(switch_set) or {x for x, _ in nxt.values()} != set(switch_set):
        raise StructureError(f"{label} is not a single oriented circle")
    start = min(nxt)
    order, branches = [start], []
    cur = start
    while True:
        cur, b = nxt[cur]
        branches.append(b)
        if cur == start:
            break
        order.append(cur)
    if len(order) != len(nxt):
        raise StructureError(f"{label} has more than one component")
    return tuple(order), tuple(branches)


def decompose_ladders(boundary):
    """Partition the flat triangles into upward and downward ladders."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for tr in boundary.triangles:
        parent[(tr.tet, tr.vertex)] = (tr.tet, tr.vertex)
    branches = boundary.branches
    for bd in branches.values():
        if bd.rung:
            a, b = (find(x) for x in bd.triangles)
            if a != b:
                parent[max(a, b)] = min(a, b)

    groups = defaultdict(list)
    for tr in boundary.triangles:
        groups[find((tr.tet, tr.vertex))].append(tr)

    ladders = []
    for base in sorted(groups):
        members = groups[base]
        kind = members[0].kind
        rungs, poles = set(), set()
        for tr in members:
            pole_sides = [b for _, b in tr.sides if not branches[b].rung]
            if len(pole_sides) != 1:
                raise StructureError(
                    f"flat triangle {(tr.tet, tr.vertex)} has {len(pole_sides)} ladderpole sides"
                )
            for _, b in tr.sides:
                (rungs if branches[b].rung else poles).add(b)
        rungs = sorted(rungs)
        lefts = {branches[b].left for b in rungs}
        rights = {branches[b].right for b in rungs}
        if lefts & rights:
            raise StructureError(f"ladder at {base} has a switch on both ladderpoles")
        left_br = [branches[b] for b in sorted(poles) if branches[b].left in lefts]
        right_br = [branches[b] for b in sorted(poles) if branches[b].left in rights]
        if len(left_br) + len(right_br) != len(poles):
            raise StructureError(f"ladder at {base} has a stray ladderpole branch")
        left_pole, left_pb = _cyclic_pole(left_br, lefts, "left ladderpole")
        right_pole, right_pb = _cyclic_pole(right_br, rights, "right ladderpole")
        ladders.append(Ladder(
            index=len(ladders),
            cusp=members[0].cusp,
            kind=kind,
            triangles=tuple(sorted((tr.tet, tr.vertex) for tr in members)),
            rungs=tuple(rungs),
            left_pole=left_pole,
            right_pole=right_pole,
            left_pole_branches=left_pb,
            right_pole_branches=right_pb,
        ))
    return tuple(ladders)


@dataclass(frozen=True)
class VeeringRuleCheck:
    ladder: int
    pole: str
    switch: Switch
    expected: str
    actual: str

    @property
    def ok(self):
        return self.expected == self.actual


@dataclass(frozen=True)
class VeeringRuleReport:
    checks: tuple

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    @property
    def failures(self):
        return tuple(c for c in self.checks if not c.ok)


def check_veering_rule(boundary):
    """Compare the colour predicted by a switch's ladderpole with the colour
    of its edge: left poles of upward ladders are right veering and right
    poles are left veering."""
    colors = boundary.tri.colors
    checks = []
    for ladder in boundary.ladders:
        if ladder.kind != UPWARD:
            continue
        for pole, switches, expected in (("left", ladder.left_pole, RIGHT),
                                         ("right", ladder.right_pole, LEFT)):
            for s in switches:
                checks.append(VeeringRuleCheck(ladder.index, pole, s, expected,
                                               colors[s.edge]))
    return VeeringRuleReport(tuple(checks))


def ladder_summary(boundary):
    """Per cusp torus: ladder counts and ladderpole lengths."""
    out = []
    for c in sorted(boundary.cusps):
        ladders = [lad for lad in boundary.ladders if lad.cusp == c]
        out.append({
            "cusp": c,
            "upward": sum(lad.kind == UPWARD for lad in ladders),
            "downward": sum(lad.kind == DOWNWARD for lad in ladders),
            "ladders": [
                {
                    "kind": lad.kind,
                    "triangles": len(lad.triangles),
                    "left_pole_length": len(lad.left_pole),
                    "right_pole_length": len(lad.right_pole),
                }
                for lad in ladders
            ],
        })
    return out
