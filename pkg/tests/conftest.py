from importlib.resources import files
from pathlib import Path

import pytest

from veerkit import parse_taut_signature, read_census

DATA = Path(__file__).parent / "data"
FIGURE_EIGHT = "cPcbbbiht_12"


def layered_entries():
    return read_census((files("veerkit") / "data" / "layered_fixtures.txt").read_text())


def small_entries(max_tets):
    return [e for e in layered_entries() if len(e.token.partition("_")[2]) <= max_tets]


def sample_entries():
    return read_census((DATA / "census_sample.txt").read_text())


_cache = {}


def load(token):
    if token not in _cache:
        _cache[token] = parse_taut_signature(token)
    return _cache[token]


@pytest.fixture
def fig8():
    return load(FIGURE_EIGHT)


def random_relabeling(n, rng):
    """Random ``(tet_perm, vertex_perms)`` for :meth:`relabeled`."""
    tet_perm = list(range(n))
    rng.shuffle(tet_perm)
    vertex_perms = []
    for _ in range(n):
        p = [0, 1, 2, 3]
        rng.shuffle(p)
        vertex_perms.append(tuple(p))
    return tet_perm, vertex_perms


def parse_h1(text):
    """``"Z/5+Z+Z"`` -> ``(2, (5,))``."""
    rank, torsion = 0, []
    for part in text.split("+"):
        if part == "Z":
            rank += 1
        else:
            torsion.append(int(part.partition("/")[2]))
    return rank, tuple(sorted(torsion))


def comment_field(entry, key):
    for f in entry.fields:
        if f.startswith(key + "="):
            return f.partition("=")[2]
    return None


def brute_force_loops(digraph):
    """Simple cycles of the stable digraph via networkx.

    Arcs become their own nodes so parallel arcs give distinct cycles.
    """
    import networkx as nx

    g = nx.DiGraph()
    for a in digraph.arcs:
        g.add_edge(("face", a.face), ("arc", a))
        g.add_edge(("arc", a), ("face", a.target))
    out = set()
    for cycle in nx.simple_cycles(g):
        arcs = [node[1] for node in cycle if node[0] == "arc"]
        i = min(range(len(arcs)), key=lambda j: arcs[j][:2])
        out.add(tuple(arcs[i:] + arcs[:i]))
    return out


def upward_pole_loops(tri, digraph):
    from veerkit import build_boundary, ladderpole_stable_loop
    from veerkit.boundary import UPWARD

    loops = []
    for lad in build_boundary(tri).ladders:
        if lad.kind == UPWARD:
            for pole in (lad.left_pole_branches, lad.right_pole_branches):
                loops.append(ladderpole_stable_loop(digraph, pole))
    return loops


def random_generators(rng, max_dim=5):
    """A random finite generating set in dimension 1..max_dim (possibly empty,
    possibly spanning lines or the whole space)."""
    dim = rng.randint(1, max_dim)
    count = rng.randint(0, dim + 3)
    return dim, [tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(count)]


def blowup_grid(max_prongs=4, max_points=6):
    """Every ``(q, rotation, family)`` with at most ``max_points`` points whose
    family is invariant under rotation by ``rotation`` prongs."""
    import itertools

    from veerkit.blowup import Point

    for q in range(2, max_prongs + 1):
        n = 2 * q
        for counts in itertools.product(range(max_points + 1), repeat=n):
            if sum(counts) > max_points:
                continue
            family = [Point(k, j) for k in range(n) for j in range(counts[k])]
            for p in range(q):
                shift = 2 * p % n
                if all(counts[k] == counts[(k + shift) % n] for k in range(n)):
                    yield q, p, family


def fill_or_none(q, family, rotation):
    from veerkit import fill_even_family
    from veerkit.errors import OddFamily

    try:
        return fill_even_family(q, family, rotation)
    except OddFamily:
        return None


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
