"""Taut and veering ideal triangulations.

A triangulation is stored as a gluing table: ``gluings[t][k] = (u, perm)``
glues face slot ``k`` of tetrahedron ``t`` (the face opposite vertex ``k``)
to face slot ``perm[k]`` of tetrahedron ``u``, sending vertex ``i`` to
``perm[i]``.  The taut angle structure is one digit per tetrahedron
selecting the pair of opposite edges with angle pi:

    0 -> {01|23},  1 -> {02|13},  2 -> {03|12}.

Coorientations are not part of the input.  They are propagated across the
gluings and, unless given explicitly, the global choice is made
canonically so that every derived object is invariant under relabeling.
"""
import itertools
import json
from collections import namedtuple
from dataclasses import dataclass
from functools import cached_property

from ._isosig import decode_isosig
from .errors import (
    GluingError,
    NoCoorientation,
    SchemaError,
    SignatureError,
    TautnessError,
    VeeringError,
)

EDGE_SLOTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PI_PAIRS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
IDENTITY = (0, 1, 2, 3)

LEFT = "L"
RIGHT = "R"

# One corner of an edge link: the edge appears in ``tet`` as the vertex
# pair ``(a, b)``, with ``a`` lying on end 0 of the edge.
Corner = namedtuple("Corner", "tet a b pi")

# A face meeting an edge, in the coordinates of the face's representative
# slot: ``opposite`` is the vertex of that face not on the edge.
Incidence = namedtuple("Incidence", "face opposite")


def perm_sign(perm):
    sign = 1
    for i, j in itertools.combinations(range(len(perm)), 2):
        if perm[i] > perm[j]:
            sign = -sign
    return sign


def perm_inverse(perm):
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv)


def perm_compose(p, q):
    """The permutation ``i -> p[q[i]]``."""
    return tuple(p[i] for i in q)


def pi_digit(a, b):
    """The pi_pair digit whose edge pair contains the edge ``{a, b}``."""
    for digit, pair in enumerate(PI_PAIRS):
        if tuple(sorted((a, b))) in pair:
            return digit
    raise ValueError(f"not an edge: {a}, {b}")


def _others(*vertices):
    return tuple(v for v in range(4) if v not in vertices)


def _check_table(gluings, pi_pair):
    n = len(gluings)
    if n == 0:
        raise SchemaError("a triangulation needs at least one tetrahedron")
    if len(pi_pair) != n:
        raise SchemaError(f"{len(pi_pair)} angle digits for {n} tetrahedra")
    for d in pi_pair:
        if d not in (0, 1, 2):
            raise SchemaError(f"angle digit {d!r} is not 0, 1 or 2")
    table = []
    for t, row in enumerate(gluings):
        if len(row) != 4:
            raise SchemaError(f"tetrahedron {t} has {len(row)} face slots")
        new_row = []
        for k, entry in enumerate(row):
            try:
                u, perm = entry
                u = int(u)
                perm = tuple(int(x) for x in perm)
            except (TypeError, ValueError):
                raise SchemaError(f"bad gluing entry {entry!r}") from None
            if not 0 <= u < n:
                raise SchemaError(f"gluing target {u} out of range")
            if sorted(perm) != [0, 1, 2, 3]:
                raise SchemaError(f"{perm!r} is not a permutation of 0123")
            new_row.append((u, perm))
        table.append(tuple(new_row))
    for t, row in enumerate(table):
        for k, (u, perm) in enumerate(row):
            if (u, perm[k]) == (t, k):
                raise GluingError(f"face {k} of tetrahedron {t} is glued to itself")
            back_t, back_perm = table[u][perm[k]]
            if back_t != t or back_perm != perm_inverse(perm):
                raise GluingError(
                    f"gluing of tetrahedron {t} face {k} is not an involution"
                )
    return tuple(table), tuple(int(d) for d in pi_pair)


def _components(table):
    n = len(table)
    label = [-1] * n
    comps = []
    for start in range(n):
        if label[start] >= 0:
            continue
        label[start] = len(comps)
        comp, stack = [], [start]
        while stack:
            t = stack.pop()
            comp.append(t)
            for u, _ in table[t]:
                if label[u] < 0:
                    label[u] = len(comps)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def _frame_relabel(table, start, sigma):
    """Breadth-first relabeling from tetrahedron ``start`` with vertex map
    ``sigma``; returns (order, vertex maps, gluing form)."""
    order = [start]
    maps = {start: sigma}
    index = {start: 0}
    form = []
    i = 0
    while i < len(order):
        t = order[i]
        s = maps[t]
        s_inv = perm_inverse(s)
        for new_k in range(4):
            k = s_inv[new_k]
            u, p = table[t][k]
            if u not in index:
                index[u] = len(order)
                order.append(u)
                maps[u] = perm_compose(s, perm_inverse(p))
            new_perm = perm_compose(maps[u], perm_compose(p, s_inv))
            form.append((index[u], new_perm))
        i += 1
    return order, maps, tuple(form)


def _frame_key(table, pi_pair, tops, start, sigma):
    order, maps, form = _frame_relabel(table, start, sigma)
    pis = tuple(
        pi_digit(maps[t][PI_PAIRS[pi_pair[t]][0][0]], maps[t][PI_PAIRS[pi_pair[t]][0][1]])
        for t in order
    )
    if tops is None:
        return (form, pis)
    bits = tuple(0 in (maps[t][tops[t][0]], maps[t][tops[t][1]]) for t in order)
    return (form, pis, bits)


def _min_frame(table, pi_pair, comp, tops_options):
    best = None
    for tops in tops_options:
        for t in comp:
            for sigma in itertools.permutations(range(4)):
                key = _frame_key(table, pi_pair, tops, t, sigma)
                if best is None or key < best[0]:
                    best = (key, t, sigma, tops)
    return best


class IdealTriangulation:
    """Gluing table plus taut angle digits, with quotient edges, faces and
    cusps.  Only gluing validity is enforced here; tautness is reported by
    :func:`validate_taut`.
    """

    def __init__(self, gluings, pi_pair, *, orientation=None):
        self.gluings, self.pi_pair = _check_table(gluings, pi_pair)
        self.n = len(self.gluings)
        self._orientation_hint = orientation
        self.orientation  # non-orientable input fails early
        self.edge_corners  # so does an edge glued to itself backwards

    # -- orientation -------------------------------------------------
    @cached_property
    def components(self):
        return _components(self.gluings)

    @cached_property
    def orientation(self):
        """Sign per tetrahedron: +1 when its vertex order 0123 is positive."""
        if self._orientation_hint is not None:
            eps = tuple(int(e) for e in self._orientation_hint)
            if len(eps) != self.n or any(e not in (1, -1) for e in eps):
                raise SchemaError("orientation must be one sign per tetrahedron")
        else:
            eps = [0] * self.n
            for comp in self.components:
                key, t, sigma, _ = _min_frame(self.gluings, self.pi_pair, comp, [None])
                eps[t] = perm_sign(sigma)
                stack = [t]
                while stack:
                    s = stack.pop()
                    for u, p in self.gluings[s]:
                        if eps[u] == 0:
                            eps[u] = -perm_sign(p) * eps[s]
                            stack.append(u)
            eps = tuple(eps)
        for t, row in enumerate(self.gluings):
            for u, p in row:
                if perm_sign(p) != -eps[t] * eps[u]:
                    raise GluingError("the triangulation is not oriented consistently")
        return eps

    def is_positive(self, t, verts):
        """Whether the vertex tuple ``verts`` of tetrahedron ``t`` is
        positively ordered."""
        return perm_sign(verts) * self.orientation[t] == 1

    # -- faces ---------------------------------------------------------
    @cached_property
    def face_reps(self):
        """Face classes as pairs of (tet, slot), ordered by least slot."""
        reps = []
        seen = set()
        for t in range(self.n):
            for k in range(4):
                if (t, k) in seen:
                    continue
                u, p = self.gluings[t][k]
                seen.add((t, k))
                seen.add((u, p[k]))
                reps.append(((t, k), (u, p[k])))
        return tuple(reps)

    @cached_property
    def face_index(self):
        index = {}
        for f, (x, y) in enumerate(self.face_reps):
            index[x] = f
            index[y] = f
        return index

    def incidence(self, t, k, v):
        """Normalise the face slot ``(t, k)`` with face vertex ``v`` to
        representative coordinates."""
        f = self.face_index[(t, k)]
        if self.face_reps[f][0] == (t, k):
            return Incidence(f, v)
        u, p = self.gluings[t][k]
        return Incidence(f, p[v])

    # -- edges ---------------------------------------------------------
    @cached_property
    def edge_corners(self):
        """Cyclic edge links.  Each edge is a tuple of ``(t, a, b, c, d)``
        where the link continues through face slot ``c``; the walk starts
        at the least (tet, edge slot)."""
        edges = []
        owner = {}
        for t in range(self.n):
            for a, b in EDGE_SLOTS:
                if (t, a, b) in owner or (t, b, a) in owner:
                    continue
                c, d = _others(a, b)
                start = (t, a, b, c, d)
                walk = []
                cur = start
                while True:
                    s, x, y, z, w = cur
                    if (s, x, y) in owner or (s, y, x) in owner:
                        raise GluingError(f"edge link through tetrahedron {s} does not close")
                    owner[(s, x, y)] = len(edges)
                    walk.append(cur)
                    u, p = self.gluings[s][z]
                    cur = (u, p[x], p[y], p[w], p[z])
                    if cur == start:
                        break
                    if cur[0] == t and {cur[1], cur[2]} == {a, b}:
                        raise GluingError("an edge is identified with itself reversed")
                edges.append(tuple(walk))
        return tuple(edges)

    @cached_property
    def edge_of(self):
        """Map (tet, a, b) to (edge, end of vertex a)."""
        table = {}
        for e, walk in enumerate(self.edge_corners):
            for t, a, b, _, _ in walk:
                table[(t, a, b)] = (e, 0)
                table[(t, b, a)] = (e, 1)
        return table

    def is_pi(self, t, a, b):
        return tuple(sorted((a, b))) in PI_PAIRS[self.pi_pair[t]]

    def link_faces(self, e):
        """Incidences between consecutive corners of edge ``e``."""
        return tuple(self.incidence(t, c, d) for t, a, b, c, d in self.edge_corners[e])

    @property
    def num_edges(self):
        return len(self.edge_corners)

    @property
    def num_faces(self):
        return len(self.face_reps)

    # -- cusps ---------------------------------------------------------
    @cached_property
    def cusp_of(self):
        parent = {(t, v): (t, v) for t in range(self.n) for v in range(4)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t in range(self.n):
            for k in range(4):
                u, p = self.gluings[t][k]
                for v in range(4):
                    if v != k:
                        ra, rb = find((t, v)), find((u, p[v]))
                        if ra != rb:
                            parent[max(ra, rb)] = min(ra, rb)
        roots = sorted({find(x) for x in parent})
        label = {r: i for i, r in enumerate(roots)}
        return {x: label[find(x)] for x in parent}

    @property
    def num_cusps(self):
        return len(set(self.cusp_of.values()))

    # -- isomorphism ---------------------------------------------------
    def canonical_form(self, with_coorientation=False):
        """Relabeling-invariant form of the gluing and angle data."""
        tops = getattr(self, "top_edge", None) if with_coorientation else None
        parts = []
        for comp in self.components:
            key, _, _, _ = _min_frame(self.gluings, self.pi_pair, comp, [tops])
            parts.append(key)
        return tuple(sorted(parts))

    def to_document(self):
        return {
            "num_tetrahedra": self.n,
            "gluings": [[[u, "".join(map(str, p))] for u, p in row] for row in self.gluings],
            "pi_pair": list(self.pi_pair),
        }


# -- validation -----------------------------------------------------------

@dataclass(frozen=True)
class EdgeReport:
    edge: int
    degree: int
    pi_count: int
    adjacent_pi: bool

    @property
    def ok(self):
        return self.degree >= 4 and self.pi_count == 2 and not self.adjacent_pi


@dataclass(frozen=True)
class ValidationReport:
    edges: tuple

    @property
    def ok(self):
        return all(r.ok for r in self.edges)

    def failures(self):
        out = []
        for r in self.edges:
            if r.pi_count != 2:
                out.append(f"edge {r.edge}: angle sum {r.pi_count}pi, not 2pi")
            if r.adjacent_pi:
                out.append(f"edge {r.edge}: adjacent pi angles")
            if r.degree < 4:
                out.append(f"edge {r.edge}: degree {r.degree} < 4 (degree >= 4 required)")
        return out


def validate_taut(tri):
    """Per-edge degree, pi count and pi adjacency.  Never raises."""
    reports = []
    for e, walk in enumerate(tri.edge_corners):
        flags = [tri.is_pi(t, a, b) for t, a, b, _, _ in walk]
        m = len(flags)
        adjacent = m > 1 and any(flags[i] and flags[(i + 1) % m] for i in range(m))
        reports.append(EdgeReport(e, m, sum(flags), adjacent))
    return ValidationReport(tuple(reports))


def tet_edge_colors(tri, t):
    """Colour of each 0-edge of tetrahedron ``t`` as seen from ``t``."""
    (a, b), (c, d) = PI_PAIRS[tri.pi_pair[t]]
    if not tri.is_positive(t, (a, b, c, d)):
        c, d = d, c
    right = {tuple(sorted(x)) for x in ((a, c), (b, d))}
    left = {tuple(sorted(x)) for x in ((b, c), (a, d))}
    out = {x: RIGHT for x in right}
    out.update({x: LEFT for x in left})
    return out


def validate_veering(tri):
    """Colour every edge; raise :class:`VeeringError` on the first edge
    whose 0-corners disagree."""
    colors = []
    for e, walk in enumerate(tri.edge_corners):
        seen = set()
        for t, a, b, _, _ in walk:
            if not tri.is_pi(t, a, b):
                seen.add(tet_edge_colors(tri, t)[tuple(sorted((a, b)))])
        if len(seen) != 1:
            raise VeeringError(f"edge {e} is not veering: sees {sorted(seen) or 'no 0-corners'}")
        colors.append(seen.pop())
    return tuple(colors)


# -- veering triangulations ----------------------------------------------

@dataclass(frozen=True)
class EdgeClass:
    index: int
    corners: tuple
    top_tetra: int
    bottom_tetra: int
    side_a: tuple
    side_b: tuple
    color: str

    @property
    def degree(self):
        return len(self.corners)

    def side(self, s):
        return self.side_a if s == 0 else self.side_b


@dataclass(frozen=True)
class FaceClass:
    index: int
    reps: tuple
    tetra_above: int
    tetra_below: int
    # vertex of the representative face -> (edge, side, fan position)
    edges: tuple
    large: int


def _propagate_coorientation(tri, seed_top=True):
    """Choose the top pi-edge of every tetrahedron so that each face is a
    top face on exactly one side.  Returns per-tet top edges."""
    choice = [None] * tri.n   # 0: first pair of PI_PAIRS is top
    for comp in tri.components:
        t0 = comp[0]
        # slot 0 lies in the first pair, so it is a top slot iff the
        # second pair (the one avoiding vertex 0) is the top edge
        choice[t0] = 1 if seed_top else 0
        stack = [t0]
        while stack:
            t = stack.pop()
            for k in range(4):
                u, p = tri.gluings[t][k]
                top_here = _is_top_slot(tri.pi_pair[t], choice[t], k)
                want = _choice_for(tri.pi_pair[u], p[k], not top_here)
                if choice[u] is None:
                    choice[u] = want
                    stack.append(u)
                elif choice[u] != want:
                    raise NoCoorientation(
                        f"faces of tetrahedron {t} and {u} cannot be cooriented consistently"
                    )
    return tuple(PI_PAIRS[tri.pi_pair[t]][choice[t]] for t in range(tri.n))


def _is_top_slot(digit, choice, k):
    top = PI_PAIRS[digit][choice]
    return k not in top


def _choice_for(digit, k, top):
    for choice in (0, 1):
        if _is_top_slot(digit, choice, k) == top:
            return choice
    raise AssertionError


class VeeringTriangulation(IdealTriangulation):
    """A transverse taut veering ideal triangulation.

    ``coorientation`` optionally fixes the top pi-edge of each tetrahedron
    (as a vertex pair); ``orientation`` optionally fixes the sign of each
    tetrahedron; ``swap_sides`` lists edges whose two link sides exchange
    labels.
    """

    def __init__(self, gluings, pi_pair, *, coorientation=None, orientation=None,
                 swap_sides=()):
        super().__init__(gluings, pi_pair, orientation=orientation)
        report = validate_taut(self)
        if not report.ok:
            raise TautnessError("; ".join(report.failures()))
        if coorientation is None:
            base = _propagate_coorientation(self)
            flipped = tuple(_others(*pair) for pair in base)
            self.top_edge = self._choose_per_component(base, flipped)
        else:
            tops = tuple(tuple(sorted(int(v) for v in pair)) for pair in coorientation)
            if len(tops) != self.n:
                raise SchemaError("coorientation needs one top edge per tetrahedron")
            for t, pair in enumerate(tops):
                if pair not in PI_PAIRS[self.pi_pair[t]]:
                    raise SchemaError(f"top edge {pair} of tetrahedron {t} is not a pi-edge")
            self.top_edge = tops
            self._check_coorientation()
        self.bottom_edge = tuple(_others(*pair) for pair in self.top_edge)
        self.colors = validate_veering(self)
        self.swap_sides = frozenset(int(e) for e in swap_sides)
        self._build_quotient()

    def _choose_per_component(self, base, flipped):
        tops = list(base)
        for comp in self.components:
            _, _, _, best = _min_frame(self.gluings, self.pi_pair, comp, [base, flipped])
            for t in comp:
                tops[t] = best[t]
        return tuple(tops)

    def _check_coorientation(self):
        for t in range(self.n):
            for k in range(4):
                u, p = self.gluings[t][k]
                if self.is_top_slot(t, k) == self.is_top_slot(u, p[k]):
                    raise NoCoorientation(
                        f"face {k} of tetrahedron {t} is a {'top' if self.is_top_slot(t, k) else 'bottom'}"
                        " face on both sides"
                    )

    def is_top_slot(self, t, k):
        return k not in self.top_edge[t]

    def top_slots(self, t):
        return self.bottom_edge[t]

    def bottom_slots(self, t):
        return self.top_edge[t]

    def _build_quotient(self):
        n_faces = self.num_faces
        above = [None] * n_faces
        below = [None] * n_faces
        for f, reps in enumerate(self.face_reps):
            for t, k in reps:
                if self.is_top_slot(t, k):
                    below[f] = t
                else:
                    above[f] = t

        face_edges = [dict() for _ in range(n_faces)]
        edges = []
        for e, walk in enumerate(self.edge_corners):
            corners = tuple(Corner(t, a, b, self.is_pi(t, a, b)) for t, a, b, _, _ in walk)
            faces = self.link_faces(e)
            m = len(corners)
            i_bottom = i_top = None
            for i, (t, a, b, _) in enumerate(corners):
                if not corners[i].pi:
                    continue
                if tuple(sorted((a, b))) == self.top_edge[t]:
                    i_bottom = i
                else:
                    i_top = i
            forward = []
            i = i_bottom
            while i != i_top:
                forward.append(faces[i])
                i = (i + 1) % m
            backward = []
            i = i_bottom
            while i != i_top:
                i = (i - 1) % m
                backward.append(faces[i])
            sides = [tuple(forward), tuple(backward)]
            if e in self.swap_sides:
                sides.reverse()
            for s, side in enumerate(sides):
                for pos, inc in enumerate(side):
                    face_edges[inc.face][inc.opposite] = (e, s, pos)
            edges.append(EdgeClass(
                index=e,
                corners=corners,
                top_tetra=corners[i_top].tet,
                bottom_tetra=corners[i_bottom].tet,
                side_a=sides[0],
                side_b=sides[1],
                color=self.colors[e],
            ))
        self.edges = tuple(edges)

        faces = []
        for f, reps in enumerate(self.face_reps):
            t_up = above[f]
            k_up = next(k for t, k in reps if t == t_up and not self.is_top_slot(t, k))
            # the large incidence sits at the bottom pi-edge of the tetrahedron
            # above; its opposite vertex is the other end of the top pi-edge
            opp = next(v for v in self.top_edge[t_up] if v != k_up)
            large = self.incidence(t_up, k_up, opp).opposite
            faces.append(FaceClass(
                index=f,
                reps=reps,
                tetra_above=t_up,
                tetra_below=below[f],
                edges=tuple(sorted(face_edges[f].items())),
                large=large,
            ))
        self.faces = tuple(faces)

    # -- convenience --------------------------------------------------
    def face_edge(self, f, v):
        """(edge, side, fan position) of incidence ``(f, v)``."""
        return dict(self.faces[f].edges)[v]

    def tet_bottom_faces(self, t):
        return tuple(self.face_index[(t, k)] for k in self.bottom_slots(t))

    def tet_top_faces(self, t):
        return tuple(self.face_index[(t, k)] for k in self.top_slots(t))

    def reversed(self):
        """The same triangulation with the global coorientation reversed."""
        return VeeringTriangulation(
            self.gluings, self.pi_pair,
            coorientation=self.bottom_edge,
            orientation=self.orientation,
            swap_sides=self.swap_sides,
        )

    def with_swapped_sides(self, edges):
        return VeeringTriangulation(
            self.gluings, self.pi_pair,
            coorientation=self.top_edge,
            orientation=self.orientation,
            swap_sides=self.swap_sides.symmetric_difference(edges),
        )

    def relabeled(self, tet_perm, vertex_perms):
        """Apply ``t -> tet_perm[t]`` and vertex maps ``v -> vertex_perms[t][v]``,
        carrying the coorientation and orientation along."""
        n = self.n
        gl = [None] * n
        pis = [None] * n
        tops = [None] * n
        eps = [None] * n
        for t in range(n):
            s = tuple(vertex_perms[t])
            s_inv = perm_inverse(s)
            row = [None] * 4
            for k in range(4):
                u, p = self.gluings[t][k]
                row[s[k]] = (tet_perm[u], perm_compose(vertex_perms[u], perm_compose(p, s_inv)))
            new = tet_perm[t]
            gl[new] = row
            (a, b), _ = PI_PAIRS[self.pi_pair[t]]
            pis[new] = pi_digit(s[a], s[b])
            x, y = self.top_edge[t]
            tops[new] = (s[x], s[y])
            eps[new] = self.orientation[t] * perm_sign(s)
        return VeeringTriangulation(gl, pis, coorientation=tops, orientation=eps)

    def relabeled_canonically(self, tet_perm, vertex_perms):
        """Like :meth:`relabeled` but re-deriving every global choice."""
        moved = self.relabeled(tet_perm, vertex_perms)
        return VeeringTriangulation(moved.gluings, moved.pi_pair)

    def summary(self):
        return {
            "num_tetrahedra": self.n,
            "num_faces": self.num_faces,
            "num_edges": self.num_edges,
            "num_cusps": self.num_cusps,
            "edge_degrees": [e.degree for e in self.edges],
            "edge_colors": list(self.colors),
        }


# -- parsers --------------------------------------------------------------

def parse_explicit(text):
    """Build a veering triangulation from the canonical JSON document."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    if isinstance(text, str):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not JSON: {exc}") from None
    else:
        doc = text
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    missing = {"num_tetrahedra", "gluings", "pi_pair"} - set(doc)
    if missing:
        raise SchemaError(f"missing keys: {sorted(missing)}")
    n = doc["num_tetrahedra"]
    gluings = doc["gluings"]
    if not isinstance(n, int) or not isinstance(gluings, list) or len(gluings) != n:
        raise SchemaError("num_tetrahedra does not match the gluing list")
    table = []
    for row in gluings:
        if not isinstance(row, list) or len(row) != 4:
            raise SchemaError("each tetrahedron needs four gluings")
        new_row = []
        for entry in row:
            if (not isinstance(entry, list) or len(entry) != 2
                    or not isinstance(entry[0], int) or not isinstance(entry[1], str)
                    or len(entry[1]) != 4 or not entry[1].isdigit()):
                raise SchemaError(f"bad gluing entry {entry!r}")
            new_row.append((entry[0], tuple(int(c) for c in entry[1])))
        table.append(new_row)
    pis = doc["pi_pair"]
    if not isinstance(pis, list) or not all(isinstance(d, int) for d in pis):
        raise SchemaError("pi_pair must be a list of integers")
    return VeeringTriangulation(table, pis)


def serialize(tri):
    """Canonical JSON text (UTF-8 safe, compact, deterministic)."""
    return json.dumps(tri.to_document(), separators=(",", ":"))


def parse_taut_signature(text):
    """Decode ``<isomorphism signature>_<angle digits>``."""
    text = text.strip()
    sig, sep, angles = text.partition("_")
    if not sep or not sig or not angles:
        raise SignatureError(f"{text!r} is not of the form isoSig_angles")
    if not angles.isdigit() or any(c not in "012" for c in angles):
        raise SignatureError(f"bad angle digits {angles!r}")
    table = decode_isosig(sig)
    if len(angles) != len(table):
        raise SignatureError(
            f"{len(angles)} angle digits for {len(table)} tetrahedra in {text!r}"
        )
    return VeeringTriangulation(table, [int(c) for c in angles])


@dataclass(frozen=True)
class CensusEntry:
    token: str
    comment: str
    line: int

    @property
    def fields(self):
        return self.comment.split()


def read_census(text):
    """Census entries of a file body: one token per line, ``#`` comments."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body, _, comment = raw.partition("#")
        body = body.strip()
        if not body:
            continue
        out.append(CensusEntry(body.split()[0], comment.strip(), lineno))
    return out
