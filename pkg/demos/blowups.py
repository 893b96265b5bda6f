"""Filling even families of boundary points by blowing up a star.

Two points of opposite sign on a three-prong star sit in regions that
only meet at the centre.  One blowup makes them share an edge, and a
single segment across it joins them.  With four prongs and a family that
is symmetric under a half turn, the filler works orbit by orbit, so both
the tree and the segments come out symmetric.
"""
from veerkit import fill_even_family, validate_filling
from veerkit.blowup import Point, brute_force_fill
from veerkit.cli import ascii_star

cases = [
    ("three prongs, two points", 3, [Point(0, 0), Point(3, 0)], None),
    ("four prongs, half-turn symmetric", 4, [Point(k, 0) for k in (0, 3, 4, 7)], 2),
    ("four prongs, six points", 4, [Point(0, 0), Point(1, 0), Point(2, 0), Point(3, 0),
                                    Point(4, 0), Point(7, 0)], None),
]
for title, q, family, rotation in cases:
    tree, filling = fill_even_family(q, family, rotation)
    print(f"== {title}")
    print(f"{tree.num_edges} edges after {len(tree.splits)} blowups, "
          f"{len(filling)} segments, valid: {validate_filling(tree, family, filling, rotation)}, "
          f"brute force agrees: {brute_force_fill(q, family, rotation) is not None}")
    print(ascii_star(tree, filling))
    print()
