"""Decoder for the base-64 isomorphism signatures of 3-dimensional
triangulations used by the public census files.

Only decoding is needed; signatures are produced elsewhere.
"""
import itertools
import string

from .errors import SignatureError

_ALPHABET = string.ascii_letters + "0123456789+-"
_VALUE = {ch: i for i, ch in enumerate(_ALPHABET)}

# Gluing codes index the permutations of {0,1,2,3} in lexicographic order.
S4_TABLE = tuple(itertools.permutations(range(4)))


def _char_value(sig, pos):
    try:
        return _VALUE[sig[pos]]
    except IndexError:
        raise SignatureError(f"signature {sig!r} ends prematurely") from None
    except KeyError:
        raise SignatureError(f"invalid character {sig[pos]!r} in {sig!r}") from None


def _read_int(sig, pos, width):
    value = 0
    for i in range(width):
        value |= _char_value(sig, pos + i) << (6 * i)
    return value


def _decode_component(sig, pos, offset):
    """Decode one connected component starting at ``pos``.

    Returns the gluing table (tetrahedron indices shifted by ``offset``)
    and the position just past the component.
    """
    n = _char_value(sig, pos)
    pos += 1
    if n == 63:
        width = _char_value(sig, pos)
        n = _read_int(sig, pos + 1, width)
        pos += 1 + width
    else:
        width = 1
    if n == 0:
        return [], pos

    total = 4 * n
    actions = []
    covered = 0
    joins = 0
    while covered < total:
        packed = _char_value(sig, pos)
        pos += 1
        for shift in (0, 2, 4):
            if covered >= total:
                break
            action = (packed >> shift) & 3
            if action == 0:
                covered += 1
            elif action == 1:
                covered += 2
            elif action == 2:
                covered += 2
                joins += 1
            else:
                raise SignatureError(f"invalid facet action in {sig!r}")
            actions.append(action)
    if covered != total:
        raise SignatureError(f"facet actions overrun in {sig!r}")

    dests = []
    for _ in range(joins):
        dests.append(_read_int(sig, pos, width))
        pos += width
    codes = []
    for _ in range(joins):
        codes.append(_char_value(sig, pos))
        pos += 1

    table = [[None] * 4 for _ in range(n)]
    next_new = 1
    it_action = iter(actions)
    it_join = iter(zip(dests, codes))
    for tet in range(n):
        for face in range(4):
            if table[tet][face] is not None:
                continue
            action = next(it_action, None)
            if action is None:
                raise SignatureError(f"too few facet actions in {sig!r}")
            if action == 0:
                raise SignatureError(f"{sig!r} has boundary faces")
            if action == 1:
                if next_new >= n:
                    raise SignatureError(f"too many tetrahedra referenced in {sig!r}")
                dest, perm = next_new, (0, 1, 2, 3)
                next_new += 1
            else:
                dest, code = next(it_join)
                if dest >= n or code >= 24:
                    raise SignatureError(f"gluing out of range in {sig!r}")
                perm = S4_TABLE[code]
            other = perm[face]
            if table[dest][other] is not None or (dest == tet and other == face):
                raise SignatureError(f"inconsistent gluing in {sig!r}")
            inverse = [0] * 4
            for i, j in enumerate(perm):
                inverse[j] = i
            table[tet][face] = (dest + offset, perm)
            table[dest][other] = (tet + offset, tuple(inverse))
    if next_new != n:
        raise SignatureError(f"{sig!r} describes a disconnected component")
    return table, pos


def decode_isosig(sig):
    """Return the gluing table ``[[(tet, perm), ...4], ...]`` of ``sig``.

    Signatures of disconnected triangulations are concatenations of the
    component signatures; components are numbered consecutively.
    """
    if not sig:
        raise SignatureError("empty signature")
    pos = 0
    table = []
    while pos < len(sig):
        part, pos = _decode_component(sig, pos, len(table))
        table.extend(part)
    if not table:
        raise SignatureError(f"{sig!r} has no tetrahedra")
    return table
