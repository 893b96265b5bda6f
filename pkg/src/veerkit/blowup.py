"""Pseudo-Anosov trees in a disk, even families on the boundary circle and
fillings by cooriented segments.

Everything is combinatorial.  A star with ``q`` prongs has ``2q`` leaves on
the circle, numbered counterclockwise; the edge to leaf ``i`` points into
the leaf when ``i`` is even and away from it when ``i`` is odd.  Interval
``k`` is the arc of the circle from leaf ``k`` to leaf ``k + 1``, and region
``k`` is the complementary region of the tree containing it.

A tree obtained from the star by dynamic blowups keeps the same leaves.
Each internal edge cuts the leaves into two cyclic intervals (a *split*),
and the tree is determined by its set of splits.  A segment is a chord
between two points of the family together with the tree edges it crosses.
"""
import itertools
from collections import namedtuple
from dataclasses import dataclass
from functools import cached_property

from .errors import (NotAdjacentAtVertex, NotSymmetric, OddFamily, SameOrientation,
                     SizeGuard, StructureError)

# ``ordinal`` orders points inside one interval, counterclockwise.
Point = namedtuple("Point", "interval ordinal")

BRUTE_FORCE_MAX_PRONGS = 4
BRUTE_FORCE_MAX_POINTS = 6


def leaf_edge(i):
    return ("leaf", i)


def split_edge(leaves):
    return ("split", tuple(sorted(leaves)))


def interval_sign(k):
    """+1 when the interval's orientation (from its - leaf to its + leaf)
    is counterclockwise."""
    return 1 if k % 2 else -1


def point_sign(p):
    return interval_sign(p.interval)


@dataclass(frozen=True)
class Vertex:
    # incident edges in counterclockwise order, with the cyclic interval of
    # leaves reached through each one
    edges: tuple
    away: tuple

    @property
    def degree(self):
        return len(self.edges)


def _cyclic_start(leaves, n):
    return next(x for x in sorted(leaves) if (x - 1) % n not in leaves)


def _cyclic_end(leaves, n):
    return next(x for x in sorted(leaves) if (x + 1) % n not in leaves)


def _is_cyclic_interval(leaves, n):
    leaves = set(leaves)
    if not leaves or len(leaves) == n:
        return False
    return sum((x - 1) % n not in leaves for x in leaves) == 1


def _normalize(leaves, n):
    leaves = frozenset(leaves)
    return leaves if 0 not in leaves else frozenset(range(n)) - leaves


@dataclass(frozen=True)
class PseudoAnosovTree:
    """A dynamic blowup of the ``q``-pronged star, given by its splits."""
    q: int
    splits: frozenset = frozenset()

    @classmethod
    def star(cls, q):
        if q < 2:
            raise StructureError("a star needs at least two prongs")
        return cls(q)

    @property
    def num_leaves(self):
        return 2 * self.q

    @cached_property
    def _structure(self):
        n = self.num_leaves
        verts = [[(leaf_edge(i), frozenset([i])) for i in range(n)]]
        for s in sorted(self.splits, key=lambda s: (len(s), sorted(s))):
            if not _is_cyclic_interval(s, n) or 0 in s:
                raise StructureError(f"split {sorted(s)} is not a normalized cyclic interval")
            for w in verts:
                inside = [(e, a) for e, a in w if a <= s]
                if len(inside) < 2 or len(inside) == len(w) or \
                        frozenset().union(*(a for _, a in inside)) != s:
                    continue
                outside = [(e, a) for e, a in w if not a <= s]
                if len(inside) % 2 == 0 or len(inside) < 3 or len(outside) < 3:
                    raise StructureError(f"split {sorted(s)} leaves a vertex of odd or low degree")
                new = split_edge(s)
                verts.remove(w)
                verts.append(inside + [(new, frozenset(range(n)) - s)])
                verts.append(outside + [(new, s)])
                break
            else:
                raise StructureError(f"split {sorted(s)} is incompatible with the others")
        out = []
        for w in verts:
            w = sorted(w, key=lambda ea: _cyclic_start(ea[1], n))
            out.append(Vertex(tuple(e for e, _ in w), tuple(a for _, a in w)))
        out.sort(key=lambda v: sorted(v.edges))
        heads = self._heads(out)
        return tuple(out), heads

    def _heads(self, verts):
        """Leaves on the head side of every edge."""
        n = self.num_leaves
        every = frozenset(range(n))
        heads = {}
        for i in range(n):
            heads[leaf_edge(i)] = frozenset([i]) if i % 2 == 0 else every - {i}
        for s in sorted(self.splits, key=lambda s: (len(s), sorted(s))):
            e = split_edge(s)
            # the vertex on the ``s`` side sees the edge leading away to the rest
            w = next(v for v in verts if e in v.edges and v.away[v.edges.index(e)] == every - s)
            i = w.edges.index(e)
            nb = w.edges[(i + 1) % w.degree]
            nb_out = heads[nb] == w.away[(i + 1) % w.degree]
            heads[e] = s if nb_out else every - s
        return heads

    @property
    def vertices(self):
        return self._structure[0]

    @property
    def edges(self):
        return tuple(leaf_edge(i) for i in range(self.num_leaves)) + \
            tuple(split_edge(s) for s in sorted(self.splits, key=sorted))

    @property
    def num_edges(self):
        return self.num_leaves + len(self.splits)

    def head_side(self, edge):
        return self._structure[1][edge]

    def is_outgoing(self, vertex, i):
        return self.head_side(vertex.edges[i]) == vertex.away[i]

    def check(self):
        """Every interior vertex alternates in and out edges."""
        for v in self.vertices:
            if v.degree < 4 or v.degree % 2:
                return False
            for i in range(v.degree):
                if self.is_outgoing(v, i) == self.is_outgoing(v, (i + 1) % v.degree):
                    return False
        return True

    # -- regions ---------------------------------------------------------
    def wedge(self, vertex, region):
        """Position ``a`` such that region ``region`` lies between edges
        ``a`` and ``a + 1`` of ``vertex``, or ``None``."""
        n = self.num_leaves
        for a in range(vertex.degree):
            if _cyclic_end(vertex.away[a], n) == region % n:
                return a
        return None

    def vertices_of_region(self, region):
        return tuple(v for v in self.vertices if self.wedge(v, region) is not None)

    def vertex_with(self, edges):
        return next(v for v in self.vertices if set(edges) <= set(v.edges))

    # -- symmetry --------------------------------------------------------
    def rotated(self, shift):
        n = self.num_leaves
        return PseudoAnosovTree(self.q, frozenset(
            _normalize({(x + shift) % n for x in s}, n) for s in self.splits))

    def rotate_edge(self, edge, shift):
        n = self.num_leaves
        kind, data = edge
        if kind == "leaf":
            return leaf_edge((data + shift) % n)
        return split_edge(_normalize({(x + shift) % n for x in data}, n))

    def is_symmetric(self, shift):
        return self.rotated(shift) == self

    def collapse(self, edge):
        """Contract an internal edge."""
        kind, data = edge
        if kind != "split" or frozenset(data) not in self.splits:
            raise StructureError(f"{edge} is not an internal edge")
        return PseudoAnosovTree(self.q, self.splits - {frozenset(data)})

    def to_json(self):
        heads = self._structure[1]
        return {
            "prongs": self.q,
            "edges": [
                {"edge": edge_json(e), "head_side": sorted(heads[e])} for e in self.edges
            ],
            "vertices": [[edge_json(e) for e in v.edges] for v in self.vertices],
        }


def edge_json(edge):
    kind, data = edge
    return data if kind == "leaf" else list(data)


def _split_block(tree, vertex, a, b):
    """Split off the edges strictly between wedges ``a`` and ``b`` (going
    counterclockwise) into a new vertex."""
    block = [(a + 1 + i) % vertex.degree for i in range((b - a) % vertex.degree)]
    leaves = frozenset().union(*(vertex.away[i] for i in block))
    s = _normalize(leaves, tree.num_leaves)
    new_tree = PseudoAnosovTree(tree.q, tree.splits | {s})
    new_edge = split_edge(s)
    rest = [e for i, e in enumerate(vertex.edges) if i not in block]
    return new_tree, new_edge, new_tree.vertex_with(rest[:1] + [new_edge])


def regional_blowup(tree, region_a, region_b):
    """The one-edge blowup making regions ``region_a`` and ``region_b``
    share an edge."""
    n = tree.num_leaves
    common = set(tree.vertices_of_region(region_a)) & set(tree.vertices_of_region(region_b))
    if len(common) != 1:
        raise NotAdjacentAtVertex(f"regions {region_a} and {region_b} meet at {len(common)} vertices")
    (w,) = common
    a, b = tree.wedge(w, region_a), tree.wedge(w, region_b)
    if (b - a) % w.degree in (1, w.degree - 1):
        raise NotAdjacentAtVertex(f"regions {region_a} and {region_b} already share an edge")
    if interval_sign(region_a % n) == interval_sign(region_b % n):
        raise SameOrientation(f"regions {region_a} and {region_b} are oriented alike")
    new_tree, _, _ = _split_block(tree, w, a, b)
    return new_tree


# -- families and fillings -----------------------------------------------

@dataclass(frozen=True)
class Segment:
    start: Point
    end: Point
    crossings: tuple     # tree edges crossed

    def rotated(self, tree, shift):
        n = tree.num_leaves
        rot = lambda p: Point((p.interval + shift) % n, p.ordinal)
        return Segment(rot(self.start), rot(self.end),
                       tuple(sorted(tree.rotate_edge(e, shift) for e in self.crossings)))

    @property
    def key(self):
        """Orientation-free identity of the chord."""
        return frozenset((self.start, self.end)), self.crossings

    def to_json(self):
        return {"start": list(self.start), "end": list(self.end),
                "crosses": [edge_json(e) for e in self.crossings]}


def _segment_order(seg):
    return seg.start, seg.end, seg.crossings


@dataclass(frozen=True)
class Filling:
    segments: tuple

    def __len__(self):
        return len(self.segments)

    def to_json(self):
        return [s.to_json() for s in self.segments]


def _between(x, a, b):
    """``x`` strictly inside the counterclockwise arc from ``a`` to ``b``."""
    if a < b:
        return a < x < b
    return x > a or x < b


def _sides(tree, seg):
    """Colour leaves and interior vertices by the side of the chord they
    lie on (True = the counterclockwise arc from start to end).  Returns
    ``None`` when the crossings are inconsistent with the endpoints."""
    n = tree.num_leaves
    inside = set()
    k = (seg.start.interval + 1) % n
    while True:
        inside.add(k)
        if k == seg.end.interval:
            break
        k = (k + 1) % n
    crossed = set(seg.crossings)
    if len(crossed) != len(seg.crossings) or not crossed <= set(tree.edges):
        return None
    nodes = [("leaf", i) for i in range(n)] + list(tree.vertices)
    ends = {}
    for v in tree.vertices:
        for e in v.edges:
            ends.setdefault(e, []).append(v)
    for i in range(n):
        ends[leaf_edge(i)].append(("leaf", i))
    colour = {("leaf", i): i in inside for i in range(n)}
    # propagate: uncrossed edges keep the colour, crossed edges flip it
    pending = list(colour)
    while pending:
        x = pending.pop()
        for e, (u, v) in ends.items():
            if x not in (u, v):
                continue
            y = v if x == u else u
            want = colour[x] != (e in crossed)
            if y in colour:
                if colour[y] != want:
                    return None
            else:
                colour[y] = want
                pending.append(y)
    if len(colour) != len(nodes):
        return None
    return colour, ends


def _segment_problems(tree, seg):
    if point_sign(seg.start) == point_sign(seg.end):
        return "endpoints have the same sign"
    got = _sides(tree, seg)
    if got is None:
        return "crossings do not separate the endpoints consistently"
    colour, ends = got
    # the coorientation points into the counterclockwise side iff the start
    # interval runs counterclockwise
    into = point_sign(seg.start) == 1
    for e in seg.crossings:
        u, v = ends[e]
        tail_vertex, head_vertex = _orient(tree, e, u, v)
        if colour[head_vertex] != into or colour[tail_vertex] == into:
            return f"edge {e} crosses against the coorientation"
    return None


def _orient(tree, e, u, v):
    """Return ``(tail, head)`` among the two ends of ``e``."""
    head = tree.head_side(e)
    for x, y in ((u, v), (v, u)):
        if isinstance(y, tuple) and y[0] == "leaf":
            if (head == frozenset([y[1]])):
                return x, y
            continue
        i = y.edges.index(e)
        # y is the head when the leaves beyond y (away from x) are the head side
        beyond = frozenset(range(tree.num_leaves)) - y.away[i]
        if beyond == head:
            return x, y
    raise StructureError(f"cannot orient {e}")


def filling_problems(tree, family, filling, rotation=None):
    """Reasons a filling fails; empty when it is valid."""
    problems = []
    if not tree.check():
        problems.append("tree is not a pseudo-Anosov tree")
    fam = set(family)
    used = [p for s in filling.segments for p in (s.start, s.end)]
    if len(used) != len(set(used)) or set(used) != fam:
        problems.append("segment endpoints do not match the family")
    for s in filling.segments:
        msg = _segment_problems(tree, s)
        if msg:
            problems.append(f"{s}: {msg}")
    if problems:
        return problems
    sides = {s: _sides(tree, s)[0] for s in filling.segments}
    for s, t in itertools.combinations(filling.segments, 2):
        a, b = s.start, s.end
        t_in = [_between(x, a, b) for x in (t.start, t.end)]
        if t_in[0] != t_in[1]:
            problems.append(f"segments {s} and {t} cross")
            continue
        s_t_side = t_in[0]
        c, d = t.start, t.end
        s_in = _between(a, c, d)
        inner_s = {x for x in tree.vertices if sides[s][x] != s_t_side}
        inner_t = {x for x in tree.vertices if sides[t][x] != s_in}
        if inner_s & inner_t:
            problems.append(f"segments {s} and {t} enclose a common vertex")
    if rotation:
        shift = (2 * rotation) % tree.num_leaves
        if not tree.is_symmetric(shift):
            problems.append("tree is not rotation invariant")
        segs = {s.key for s in filling.segments}
        if {s.rotated(tree, shift).key for s in filling.segments} != segs:
            problems.append("filling is not rotation invariant")
    return problems


def validate_filling(tree, family, filling, rotation=None):
    return not filling_problems(tree, family, filling, rotation)


def _check_family(q, family, rotation):
    n = 2 * q
    family = [Point(*p) for p in family]
    if len(set(family)) != len(family):
        raise ValueError("family has repeated points")
    for p in family:
        if not 0 <= p.interval < n:
            raise ValueError(f"interval {p.interval} out of range for {q} prongs")
    shift = (2 * rotation) % n if rotation else 0
    if shift and {Point((p.interval + shift) % n, p.ordinal) for p in family} != set(family):
        raise NotSymmetric("family is not invariant under the rotation")
    if sum(point_sign(p) for p in family):
        raise OddFamily("signed point count is nonzero")
    return sorted(family), shift


def fill_even_family(q, family, rotation=None):
    """Blow up the ``q``-pronged star and fill ``family`` over the result.

    Repeatedly take a circularly adjacent pair of points with opposite
    signs, together with its rotation orbit.  A pair whose regions share an
    edge at the working vertex is joined across that edge; otherwise the
    regions meet only at the vertex and a regional blowup splits off the
    edges between them.  The remaining points then lie in regions around a
    single vertex, which becomes the working vertex of the next round.

    Returns ``(tree, filling)``.
    """
    remaining, shift = _check_family(q, family, rotation)
    tree = PseudoAnosovTree.star(q)
    centre = tree.vertices[0]
    segments = []
    n = tree.num_leaves
    while remaining:
        m = len(remaining)
        choices = []
        for i in range(m):
            x, y = remaining[i], remaining[(i + 1) % m]
            if point_sign(x) == point_sign(y):
                continue
            a, b = tree.wedge(centre, x.interval), tree.wedge(centre, y.interval)
            k = (b - a) % centre.degree
            choices.append((k != 1, x, y))
        _, x, y = min(choices)
        orbit = [(x, y)]
        if shift:
            while True:
                x, y = (Point((p.interval + shift) % n, p.ordinal) for p in (x, y))
                if (x, y) == orbit[0]:
                    break
                orbit.append((x, y))
        for x, y in orbit:
            a, b = tree.wedge(centre, x.interval), tree.wedge(centre, y.interval)
            if a is None or b is None:
                raise StructureError("a remaining point is not next to the working vertex")
            if (b - a) % centre.degree == 1:
                crossed = centre.edges[b]
            else:
                tree, crossed, centre = _split_block(tree, centre, a, b)
            segments.append(Segment(x, y, (crossed,)))
            remaining.remove(x)
            remaining.remove(y)
    return tree, Filling(tuple(sorted(segments, key=_segment_order)))


# -- brute force ---------------------------------------------------------

def all_blowups(q):
    """Every dynamic blowup of the ``q``-pronged star, fewest edges first."""
    start = PseudoAnosovTree.star(q)
    seen = {start}
    layer = [start]
    out = [start]
    while layer:
        nxt = []
        for tree in layer:
            for v in tree.vertices:
                for a in range(v.degree):
                    for k in range(3, v.degree - 2, 2):
                        new, _, _ = _split_block(tree, v, a, (a + k) % v.degree)
                        if new not in seen:
                            seen.add(new)
                            nxt.append(new)
        nxt.sort(key=lambda t: sorted(map(sorted, t.splits)))
        out.extend(nxt)
        layer = nxt
    return out


def _candidate_segments(tree, x, y):
    verts = tree.vertices
    edges = tree.edges
    out = []
    for bits in itertools.product((False, True), repeat=len(verts)):
        colour = dict(zip(verts, bits))
        n = tree.num_leaves
        k = (x.interval + 1) % n
        inside = set()
        while True:
            inside.add(k)
            if k == y.interval:
                break
            k = (k + 1) % n
        for i in range(n):
            colour[("leaf", i)] = i in inside
        crossed = []
        for e in edges:
            ends = [v for v in verts if e in v.edges]
            if e[0] == "leaf":
                ends.append(("leaf", e[1]))
            if colour[ends[0]] != colour[ends[1]]:
                crossed.append(e)
        seg = Segment(x, y, tuple(sorted(crossed)))
        if _segment_problems(tree, seg) is None:
            out.append(seg)
    return sorted(set(out))


def brute_force_fill(q, family, rotation=None):
    """Search every blowup and every segment system; ``None`` if nothing
    fills the family."""
    family = [Point(*p) for p in family]
    if q > BRUTE_FORCE_MAX_PRONGS or len(family) > BRUTE_FORCE_MAX_POINTS:
        raise SizeGuard(f"brute force is limited to {BRUTE_FORCE_MAX_PRONGS} prongs "
                        f"and {BRUTE_FORCE_MAX_POINTS} points")
    points = sorted(set(family))
    if sum(point_sign(p) for p in points):
        return None
    shift = (2 * rotation) % (2 * q) if rotation else 0
    for tree in all_blowups(q):
        if shift and not tree.is_symmetric(shift):
            continue
        cands = {}

        def search(left, chosen):
            if not left:
                filling = Filling(tuple(sorted(chosen, key=_segment_order)))
                return filling if validate_filling(tree, points, filling, rotation) else None
            x = left[0]
            for y in left[1:]:
                if point_sign(x) == point_sign(y):
                    continue
                pair = (x, y) if x < y else (y, x)
                if pair not in cands:
                    cands[pair] = _candidate_segments(tree, *pair)
                rest = [p for p in left[1:] if p != y]
                for seg in cands[pair]:
                    trial = Filling(tuple(chosen + [seg]))
                    if filling_problems(tree, [p for s in trial.segments for p in (s.start, s.end)],
                                        trial):
                        continue
                    found = search(rest, chosen + [seg])
                    if found:
                        return found
            return None

        found = search(points, [])
        if found is not None:
            return tree, found
    return None
