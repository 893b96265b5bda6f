"""Integer homology of the dual spine, stable-loop transversals and the
carried/loop pairing.

The dual spine has a vertex per tetrahedron, an edge per face (running from
the tetrahedron below the face to the one above) and a 2-cell per edge of
the triangulation.  Its boundary maps are

    D1[t][f] = [above(f) = t] - [below(f) = t]
    D2[f][e] = (# side-A incidences of f at e) - (# side-B incidences)

so ``H1 = ker D1 / im D2`` and the carried weight systems are exactly the
nonnegative 1-cocycles ``D2^T w = 0``.
"""
from dataclasses import dataclass
from functools import cached_property

from .errors import ConventionError, NotACycle, NotCarried


# -- small exact matrix helpers -------------------------------------------

def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(x * b[k][j] for k, x in enumerate(row) if x) for j in range(cols)] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v) if x) for row in a]


def transpose(a, cols=None):
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*a)]


def _snf(a):
    """Smith form with unimodular transforms and their inverses:
    ``u @ a @ v = s``."""
    m = len(a)
    n = len(a[0]) if m else 0
    s = [list(map(int, row)) for row in a]
    u, u_inv = identity(m), identity(m)
    v, v_inv = identity(n), identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]
        for row in u_inv:
            row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]
        v_inv[src] = [x - q * y for x, y in zip(v_inv[src], v_inv[dst])]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if s[i][j] and (pivot is None or abs(s[i][j]) < abs(s[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return s, u, v, u_inv, v_inv
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = s[t][t]
            clean = True
            for i in range(t + 1, m):
                add_row(i, t, -(s[i][t] // p))
                clean = clean and s[i][t] == 0
            for j in range(t + 1, n):
                add_col(j, t, -(s[t][j] // p))
                clean = clean and s[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if s[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
            for row in u_inv:
                row[t] = -row[t]
    return s, u, v, u_inv, v_inv


def smith_normal_form(a):
    """Return ``(s, u, v)`` with ``u @ a @ v = s`` diagonal, each diagonal
    entry dividing the next, and ``u``, ``v`` unimodular."""
    s, u, v, _, _ = _snf(a)
    return s, u, v


def _rank_of_diagonal(s):
    r = 0
    while r < min(len(s), len(s[0]) if s else 0) and s[r][r]:
        r += 1
    return r


# -- the dual spine --------------------------------------------------------

@dataclass(frozen=True)
class DualSpineComplex:
    d1: tuple    # tetrahedra x faces
    d2: tuple    # faces x edges

    @classmethod
    def of(cls, tri):
        d1 = [[0] * tri.num_faces for _ in range(tri.n)]
        for f, face in enumerate(tri.faces):
            d1[face.tetra_above][f] += 1
            d1[face.tetra_below][f] -= 1
        d2 = [[0] * tri.num_edges for _ in range(tri.num_faces)]
        for e, edge in enumerate(tri.edges):
            for inc in edge.side_a:
                d2[inc.face][e] += 1
            for inc in edge.side_b:
                d2[inc.face][e] -= 1
        return cls(tuple(map(tuple, d1)), tuple(map(tuple, d2)))

    def is_cycle(self, word):
        return all(x == 0 for x in matvec(self.d1, word))

    def is_cocycle(self, w):
        return all(x == 0 for x in matvec(transpose(self.d2, len(w)), w))


class H1Presentation:
    """``H1 = Z^rank + torsion`` with a projection from face cycles."""

    def __init__(self, complex_):
        self.complex = complex_
        d1 = [list(r) for r in complex_.d1]
        d2 = [list(r) for r in complex_.d2]
        n_faces = len(d2)
        n_edges = len(d2[0]) if d2 else 0
        _, _, v1, _, v1_inv = _snf(d1) if d1 else (None, None, identity(n_faces), None, identity(n_faces))
        s1 = matmul(matmul(_snf(d1)[1], d1), v1) if d1 else []
        r = _rank_of_diagonal(s1) if s1 else 0
        self._v1_inv = v1_inv
        self._r = r
        k = n_faces - r
        lifted = matmul(v1_inv, d2) if n_edges else [[] for _ in range(n_faces)]
        if any(any(row) for row in lifted[:r]):
            raise ConventionError("boundary of a 2-cell is not a cycle")
        b = lifted[r:]
        if n_edges and k:
            sb, ub, _, ub_inv, _ = _snf(b)
            rb = _rank_of_diagonal(sb)
            diag = [sb[i][i] for i in range(rb)]
        else:
            ub, ub_inv, rb, diag = identity(k), identity(k), 0, []
        self._ub = ub
        self._rb = rb
        self._diag = diag
        self.rank = k - rb
        self.torsion = tuple(d for d in diag if d > 1)
        kernel = [[v1[i][r + j] for j in range(k)] for i in range(n_faces)]
        # free generators as face cycles
        self.generators = tuple(
            tuple(matvec(kernel, [ub_inv[i][rb + j] for i in range(k)]))
            for j in range(self.rank)
        )

    def _coords(self, word):
        if not self.complex.is_cycle(word):
            raise NotACycle("face word is not closed: D1 * word != 0")
        y = matvec(self._v1_inv, word)[self._r:]
        return matvec(self._ub, y)

    def project(self, word):
        """Free coordinates of the class of a face cycle."""
        return tuple(self._coords(word)[self._rb:])

    def torsion_part(self, word):
        c = self._coords(word)
        return tuple(c[i] % d for i, d in enumerate(self._diag) if d > 1)

    def evaluate(self, w):
        """Coordinates of a cocycle: its values on the free generators."""
        return tuple(sum(x * y for x, y in zip(w, z)) for z in self.generators)


def homology_h1(tri):
    return H1Presentation(DualSpineComplex.of(tri))


# -- transversals and pairing ----------------------------------------------

@dataclass(frozen=True)
class FaceCrossingWord:
    crossings: tuple       # faces in crossing order, every sign +1
    per_turn: tuple        # number of crossings contributed by each turn
    vector: tuple

    def __add__(self, other):
        return FaceCrossingWord(
            self.crossings + other.crossings,
            self.per_turn + other.per_turn,
            tuple(x + y for x, y in zip(self.vector, other.vector)),
        )


def transversalize(tri, loop):
    """Push a stable loop off the 2-skeleton in the positive direction.

    At each turn the route climbs the fan on the side it is leaving, so it
    crosses every face above the departing one on that side, up to and
    including the fan top.
    """
    crossings = []
    per_turn = []
    for arc in loop.arcs:
        e, s, pos = tri.face_edge(arc.face, arc.slot)
        if (e, s) != (arc.edge, arc.side):
            raise ConventionError("arc does not match the face incidence it names")
        above = [inc.face for inc in tri.edges[e].side(s)[pos + 1:]]
        if not above:
            raise ConventionError(f"turn at edge {e} from face {arc.face} crosses nothing")
        crossings.extend(above)
        per_turn.append(len(above))
    vec = [0] * tri.num_faces
    for f in crossings:
        vec[f] += 1
    return FaceCrossingWord(tuple(crossings), tuple(per_turn), tuple(vec))


def _as_vector(word):
    return tuple(word.vector) if isinstance(word, FaceCrossingWord) else tuple(word)


def check_carried(complex_, w):
    if len(w) != len(complex_.d2):
        raise NotCarried(f"expected {len(complex_.d2)} weights, got {len(w)}")
    if any(x < 0 for x in w):
        raise NotCarried("weights must be nonnegative")
    if not complex_.is_cocycle(w):
        raise NotCarried("weights violate a branch equation")


def pairing(complex_, w, word):
    """``sum_f w_f * word_f`` for a carried ``w`` and a face cycle."""
    vec = _as_vector(word)
    check_carried(complex_, w)
    if not complex_.is_cycle(vec):
        raise NotACycle("face word is not closed: D1 * word != 0")
    return sum(x * y for x, y in zip(w, vec))


class LoopClasses:
    """Homology bookkeeping for the stable loops of one triangulation."""

    def __init__(self, tri, h1=None):
        self.tri = tri
        self.h1 = h1 or homology_h1(tri)

    @cached_property
    def complex(self):
        return self.h1.complex

    def word(self, loop):
        return transversalize(self.tri, loop)

    def loop_class(self, loop_or_word):
        word = loop_or_word if isinstance(loop_or_word, (FaceCrossingWord, tuple, list)) \
            else self.word(loop_or_word)
        return self.h1.project(_as_vector(word))


def loop_class(h1, word):
    """Free coordinates of the class of a face word in ``h1``."""
    return h1.project(_as_vector(word))
