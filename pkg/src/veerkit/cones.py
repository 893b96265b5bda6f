"""Exact rational polyhedral cones by the double description method.

A cone is stored twice: as generators (a lineality basis plus extreme rays
modulo lineality) and as constraints (equations plus facet normals modulo
equations).  Both halves are integer, primitive and canonical, so two cones
are equal exactly when their descriptions agree.
"""
import os
from fractions import Fraction
from math import gcd

from .errors import DimensionGuard, DimensionMismatch

DEFAULT_DIM_CAP = 12


def dim_cap():
    return int(os.environ.get("VEERKIT_DIM_CAP", DEFAULT_DIM_CAP))


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def primitive(v):
    """Scale a rational vector to the primitive integer vector on its ray."""
    if all(type(x) is int for x in v):
        g = 0
        for x in v:
            g = gcd(g, x)
        return tuple(x // g for x in v) if g > 1 else tuple(v)
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def rank(vectors):
    """Rank of rational vectors by fraction-free integer elimination."""
    rows = [primitive(v) for v in vectors]
    rows = [list(r) for r in rows if any(r)]
    r = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        for i in range(r + 1, len(rows)):
            x = rows[i][c]
            if x:
                row = [piv[c] * a - x * b for a, b in zip(rows[i], piv)]
                g = 0
                for a in row:
                    g = gcd(g, a)
                rows[i] = [a // g for a in row] if g else row
        r += 1
    return r


def _reduced_basis(vectors, dim):
    """Canonical basis of a rational span: reduced row echelon form, each
    row scaled to a primitive integer vector."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    for c in range(dim):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                q = rows[i][c]
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return tuple(primitive(row) for row in rows[:r])


def _project_off(v, basis):
    """Orthogonal projection of ``v`` onto the complement of ``span(basis)``."""
    if not basis:
        return tuple(v)
    ortho = []
    for b in basis:
        b = [Fraction(x) for x in b]
        for o, oo in ortho:
            c = dot(b, o) / oo
            b = [x - c * y for x, y in zip(b, o)]
        ortho.append((b, dot(b, b)))
    v = [Fraction(x) for x in v]
    for o, oo in ortho:
        c = dot(v, o) / oo
        v = [x - c * y for x, y in zip(v, o)]
    return tuple(v)


def double_description(dim, inequalities=(), equations=()):
    """Generators of ``{x : a.x >= 0 for a in inequalities, b.x = 0 for b in
    equations}`` as ``(lineality basis, extreme rays)``."""
    lin = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays = []        # (vector, frozenset of tight inequality indices)
    constraints = [(tuple(b), True) for b in equations] + [(tuple(a), False) for a in inequalities]

    for idx, (a, is_eq) in enumerate(constraints):
        vals = [dot(a, l) for l in lin]
        j = next((i for i, x in enumerate(vals) if x), None)
        if j is not None:
            l0, s0 = lin[j], vals[j]
            if s0 < 0:
                l0, s0 = tuple(-x for x in l0), -s0
            lin = [primitive([s0 * x - dot(a, l) * y for x, y in zip(l, l0)])
                   for i, l in enumerate(lin) if i != j]
            rays = [(primitive([s0 * x - dot(a, r) * y for x, y in zip(r, l0)]), z | {idx})
                    for r, z in rays]
            if not is_eq:
                rays.append((l0, frozenset(range(idx))))
            continue
        pos, zero, neg = [], [], []
        for r, z in rays:
            v = dot(a, r)
            (pos if v > 0 else neg if v < 0 else zero).append((r, z, v))
        new = [(r, z | {idx}) for r, z, _ in zero]
        need = dim - len(lin) - 2
        for rp, zp, vp in pos:
            for rn, zn, vn in neg:
                common = zp & zn
                if len(common) < need:
                    continue
                if any(z >= common and r is not rp and r is not rn for r, z in rays):
                    continue
                new.append((primitive([vp * x - vn * y for x, y in zip(rn, rp)]), common | {idx}))
        if is_eq:
            rays = new
        else:
            rays = [(r, z) for r, z, _ in pos] + new
    return [tuple(l) for l in lin], [r for r, _ in rays]


class RationalCone:
    """A polyhedral cone in ``Q^dim`` with both of its descriptions."""

    def __init__(self, dim, lineality, rays, equations, facets):
        self.dim = dim
        self.lineality = _reduced_basis(lineality, dim)
        self.equations = _reduced_basis(equations, dim)
        self.rays = tuple(sorted({primitive(_project_off(r, self.lineality)) for r in rays}))
        self.facets = tuple(sorted({primitive(_project_off(f, self.equations)) for f in facets}))

    @classmethod
    def from_generators(cls, generators, dim=None):
        generators = [tuple(g) for g in generators]
        if dim is None:
            if not generators:
                raise ValueError("dimension required for an empty generator list")
            dim = len(generators[0])
        if any(len(g) != dim for g in generators):
            raise DimensionMismatch("generators of different lengths")
        gens = [primitive(g) for g in generators if any(g)]
        eqs, facets = double_description(dim, inequalities=gens)
        lin, rays = double_description(
            dim, inequalities=facets, equations=eqs)
        return cls(dim, lin, rays, eqs, facets)

    @classmethod
    def from_constraints(cls, dim, inequalities=(), equations=()):
        ineqs = [primitive(a) for a in inequalities if any(a)]
        eqs_in = [primitive(b) for b in equations if any(b)]
        lin, rays = double_description(dim, inequalities=ineqs, equations=eqs_in)
        eqs, facets = double_description(
            dim, inequalities=rays, equations=lin)
        return cls(dim, lin, rays, eqs, facets)

    # -- queries -----------------------------------------------------------

    @property
    def generators(self):
        return self.rays + self.lineality + tuple(tuple(-x for x in l) for l in self.lineality)

    @property
    def is_pointed(self):
        return not self.lineality

    @property
    def is_zero(self):
        return not self.lineality and not self.rays

    @property
    def dimension(self):
        """Dimension of the linear span."""
        return self.dim - len(self.equations)

    def extreme_rays(self):
        return self.rays

    def _check_dim(self, n):
        if n != self.dim:
            raise DimensionMismatch(f"vector of length {n} in a cone of dimension {self.dim}")

    def contains(self, x):
        self._check_dim(len(x))
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(f, x) >= 0 for f in self.facets)

    def contains_interior(self, x):
        """Membership in the relative interior."""
        return self.contains(x) and all(dot(f, x) > 0 for f in self.facets)

    def equals(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch(f"cones in dimensions {self.dim} and {other.dim}")
        return all(other.contains(g) for g in self.generators) and \
            all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, RationalCone):
            return NotImplemented
        return self.dim == other.dim and self.equals(other)

    def __hash__(self):
        return hash((self.dim, self.lineality, self.rays))

    def dual(self):
        """``{y : y.x >= 0 for every x in the cone}``."""
        cap = dim_cap()
        if self.dim > cap:
            raise DimensionGuard(f"ambient dimension {self.dim} exceeds the cap {cap}")
        return RationalCone(self.dim, self.equations, self.facets, self.lineality, self.rays)

    def certify(self):
        """Check that the two descriptions determine each other.

        Every generator satisfies every constraint, every facet is tight on
        a codimension-one set of generators and every ray is tight on enough
        constraints to be extreme.
        """
        for g in self.generators:
            if not self.contains(g):
                return False
        for l in self.lineality:
            if any(dot(f, l) for f in self.facets):
                return False
        span_dim = self.dimension
        for f in self.facets:
            tight = [r for r in self.rays if dot(f, r) == 0] + list(self.lineality)
            if rank(tight) != span_dim - 1:
                return False
        pointed_dim = self.dim - len(self.lineality)
        for r in self.rays:
            tight = [f for f in self.facets if dot(f, r) == 0] + list(self.equations)
            if rank(tight) != pointed_dim - 1:
                return False
        return rank(list(self.rays) + list(self.lineality)) == span_dim if self.rays or self.lineality \
            else span_dim == 0

    def to_json(self):
        return {
            "dim": self.dim,
            "lineality": [list(v) for v in self.lineality],
            "rays": [list(v) for v in self.rays],
            "equations": [list(v) for v in self.equations],
            "facets": [list(v) for v in self.facets],
        }

    def __repr__(self):
        return (f"RationalCone(dim={self.dim}, rays={len(self.rays)}, "
                f"lineality={len(self.lineality)}, facets={len(self.facets)})")
