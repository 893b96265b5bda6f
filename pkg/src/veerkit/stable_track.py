"""The stable train track and its stable loops.

Each face carries a tripod whose large half-branch runs to the bottom
pi-edge of the tetrahedron above the face.  A route leaving face ``f``
through a small half-branch at edge ``e`` must continue into the fan-top
face on the other side of ``e``, which it enters through that face's
large half-branch.  These forced transitions form the *stable digraph*:
one node per face, two arcs out of every node.  Stable loops are exactly
its directed cycles.
"""
from collections import Counter, namedtuple
from dataclasses import dataclass

from .errors import ConventionError

# Leaving ``face`` through its small half-branch at the incidence whose
# opposite vertex is ``slot``; this reaches ``edge`` on ``side`` and
# continues into ``target``.
Arc = namedtuple("Arc", "face slot edge side target")


@dataclass(frozen=True)
class StableTrainTrack:
    # per face: (large slot, small slots)
    large: tuple
    small: tuple
    # per edge: per side, the incidences (face, slot) bottom to top
    fans: tuple

    def large_count(self, e):
        count = 0
        for side in self.fans[e]:
            for f, v in side:
                count += self.large[f] == v
        return count


class StableDigraph:
    def __init__(self, tri, track):
        self.tri = tri
        self.track = track
        arcs = []
        for f, face in enumerate(tri.faces):
            for v in track.small[f]:
                e, s, _ = tri.face_edge(f, v)
                top_face, _ = track.fans[e][1 - s][-1]
                arcs.append(Arc(f, v, e, s, top_face))
        self.arcs = tuple(arcs)
        self.out = tuple(
            tuple(a for a in arcs if a.face == f) for f in range(tri.num_faces)
        )

    @property
    def num_nodes(self):
        return len(self.out)

    def arc(self, face, slot):
        for a in self.out[face]:
            if a.slot == slot:
                return a
        raise KeyError((face, slot))


def build_stable_track(tri):
    """Return ``(track, digraph)`` for a veering triangulation."""
    large = []
    small = []
    for face in tri.faces:
        verts = [v for v, _ in face.edges]
        large.append(face.large)
        small.append(tuple(v for v in verts if v != face.large))
    fans = []
    for edge in tri.edges:
        fans.append(tuple(
            tuple(inc for inc in side) for side in (edge.side_a, edge.side_b)
        ))
    track = StableTrainTrack(tuple(large), tuple(small), tuple(fans))
    for e, edge in enumerate(tri.edges):
        tops = [side[-1] for side in track.fans[e]]
        for f, v in tops:
            if track.large[f] != v or tri.faces[f].tetra_above != edge.top_tetra:
                raise ConventionError(f"fan top of edge {e} is not a large half-branch")
        if track.large_count(e) != 2:
            raise ConventionError(f"edge {e} meets {track.large_count(e)} large half-branches")
    return track, StableDigraph(tri, track)


def _canonical(arcs):
    arcs = tuple(arcs)
    i = min(range(len(arcs)), key=lambda j: arcs[j][:2])
    return arcs[i:] + arcs[:i]


@dataclass(frozen=True)
class StableLoop:
    """A directed cycle of the stable digraph, rotated to start at its
    least arc."""
    arcs: tuple

    @classmethod
    def from_arcs(cls, arcs):
        arcs = tuple(arcs)
        n = len(arcs)
        if n == 0:
            raise ValueError("a stable loop needs at least one arc")
        for i, a in enumerate(arcs):
            if a.target != arcs[(i + 1) % n].face:
                raise ValueError("arcs do not chain into a cycle")
        return cls(_canonical(arcs))

    def __len__(self):
        return len(self.arcs)

    @property
    def faces(self):
        return tuple(a.face for a in self.arcs)

    @property
    def edges(self):
        return tuple(a.edge for a in self.arcs)

    @property
    def is_minimal(self):
        """Each interior switch (face) is visited at most once.

        A loop with distinct faces may still pass one edge switch twice, but
        then necessarily in opposite directions, since the exit face at an
        edge is determined by the side it is crossed from.
        """
        return len(set(self.faces)) == len(self.arcs)

    @property
    def is_switch_simple(self):
        """Faces and edges both pairwise distinct."""
        return self.is_minimal and len(set(self.edges)) == len(self.arcs)

    def branches(self, track):
        """The route through the track as alternating half-branch labels:
        ``("small", face, slot)``, ``("large", face, slot)``."""
        out = []
        for a in self.arcs:
            out.append(("small", a.face, a.slot))
            out.append(("large", a.target, track.large[a.target]))
        return out

    def to_json(self):
        return [[a.face, a.slot, a.edge, a.side, a.target] for a in self.arcs]


def enumerate_minimal_stable_loops(digraph, *, edge_simple=False):
    """Every directed cycle visiting each face at most once, listed once per
    rotation class, in canonical order.

    With ``edge_simple`` the cycles must also use each edge at most once.
    """
    loops = []
    for start in range(digraph.num_nodes):
        # cycles whose least face is ``start``
        path = []
        stack = [iter(digraph.out[start])]
        faces = {start}
        edges = Counter()
        while stack:
            arc = next(stack[-1], None)
            if arc is None:
                stack.pop()
                if path:
                    last = path.pop()
                    edges[last.edge] -= 1
                    faces.discard(last.target)
                continue
            if arc.target < start or (edge_simple and edges[arc.edge]):
                continue
            if arc.target == start:
                loops.append(StableLoop(_canonical(path + [arc])))
                continue
            if arc.target in faces:
                continue
            path.append(arc)
            edges[arc.edge] += 1
            faces.add(arc.target)
            stack.append(iter(digraph.out[arc.target]))
    return sorted(set(loops), key=lambda lp: [a[:2] for a in lp.arcs])


def ladderpole_stable_loop(digraph, pole_branches):
    """The stable loop through the faces meeting a ladderpole.

    ``pole_branches`` is a ladderpole from :mod:`veerkit.boundary` as a
    cyclic list of branch records, each running from its right switch to
    its left switch and ending where the next one starts.  At every pole
    switch the loop passes between the faces of the two branches meeting
    there, in whichever direction the digraph allows.
    """
    track = digraph.track
    m = len(pole_branches)
    for step in (1, -1):
        arcs = []
        for i in range(m):
            before, after = pole_branches[i - 1], pole_branches[i]
            if step == 1:
                face, slot, target = before.branch.face, before.left_slot, after.branch.face
            else:
                face, slot, target = after.branch.face, after.right_slot, before.branch.face
            if slot == track.large[face]:
                break
            a = digraph.arc(face, slot)
            if a.target != target:
                break
            arcs.append(a)
        else:
            return StableLoop.from_arcs(arcs if step == 1 else arcs[::-1])
    raise ConventionError("faces along the ladderpole do not chain into a stable loop")


def decompose_stable_loop(loop):
    """Split a stable loop at repeated faces into minimal loops.  The
    multiset of arcs is preserved."""
    pending = [list(loop.arcs)]
    done = []
    while pending:
        arcs = pending.pop()
        first_seen = {}
        split = None
        for i, a in enumerate(arcs):
            if a.face in first_seen:
                split = (first_seen[a.face], i)
                break
            first_seen[a.face] = i
        if split is None:
            done.append(StableLoop(_canonical(arcs)))
            continue
        i, j = split
        pending.append(arcs[i:j])
        pending.append(arcs[j:] + arcs[:i])
    before = Counter(loop.arcs)
    after = Counter(a for piece in done for a in piece.arcs)
    if before != after:
        raise ConventionError("decomposition changed the arc multiset")
    return sorted(done, key=lambda lp: [a[:2] for a in lp.arcs])
