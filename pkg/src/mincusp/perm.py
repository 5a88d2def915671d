"""Permutations of {0, 1, 2, 3} stored as tuples p with p[v] = image of v."""
from itertools import permutations

Perm = tuple

IDENTITY = (0, 1, 2, 3)
S4 = tuple(permutations(range(4)))


def _compose(p, q):
    return tuple(p[q[v]] for v in range(len(q)))


def _inverse(p):
    inv = [0] * len(p)
    for v, w in enumerate(p):
        inv[w] = v
    return tuple(inv)


# S4 is tiny; table lookups are much faster than rebuilding tuples
_COMPOSE = {(p, q): _compose(p, q) for p in S4 for q in S4}
_INVERSE = {p: _inverse(p) for p in S4}


def compose(p, q):
    """Return p after q."""
    try:
        return _COMPOSE[p, q]
    except KeyError:
        return _compose(p, q)


def inverse(p):
    try:
        return _INVERSE[p]
    except KeyError:
        return _inverse(p)


def sign(p) -> int:
    s = 1
    seen = [False] * len(p)
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        v = start
        while not seen[v]:
            seen[v] = True
            v = p[v]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


_SIGN = {p: sign(p) for p in S4}


def perms_sending(src: int, dst: int):
    """All 4-permutations mapping vertex src to dst (i.e. face src onto face dst)."""
    return [p for p in S4 if p[src] == dst]
