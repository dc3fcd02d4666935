"""Backtracking isomorphism test for small matroids."""

from .matroid import elements_of


def _signature(m, e):
    sig = []
    for level in m.flats_by_rank:
        sizes = sorted(bin(f).count("1") for f in level if f >> e & 1)
        sig.append(tuple(sizes))
    return tuple(sig)


def find_isomorphism(m1, m2):
    """A list ``phi`` with ``phi[i]`` the image of element ``i``, or None."""
    if m1.n != m2.n or [len(x) for x in m1.flats_by_rank] != [len(x) for x in m2.flats_by_rank]:
        return None
    n = m1.n
    sig1 = [_signature(m1, e) for e in range(n)]
    sig2 = [_signature(m2, e) for e in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    rank2 = {f: k for k, level in enumerate(m2.flats_by_rank) for f in level}
    # map elements on many flats first; each flat is checked once fully mapped
    order = sorted(range(n), key=lambda e: (-sum(1 for f in m1.flats if f >> e & 1), e))
    pos = {e: k for k, e in enumerate(order)}
    closing = [[] for _ in range(n)]
    for k, level in enumerate(m1.flats_by_rank):
        for f in level:
            els = elements_of(f)
            if els:
                closing[max(pos[e] for e in els)].append((f, k))
    phi = [-1] * n
    used = [False] * n

    def image(f):
        out = 0
        for e in elements_of(f):
            out |= 1 << phi[e]
        return out

    def go(k):
        if k == n:
            return True
        e = order[k]
        for t in range(n):
            if used[t] or sig2[t] != sig1[e]:
                continue
            phi[e] = t
            used[t] = True
            if all(rank2.get(image(f)) == r for f, r in closing[k]) and go(k + 1):
                return True
            used[t] = False
            phi[e] = -1
        return False

    if m1.loops != 0 or m2.loops != 0:
        if bin(m1.loops).count("1") != bin(m2.loops).count("1"):
            return None
    if go(0):
        return list(phi)
    return None


def is_isomorphic(m1, m2):
    return find_isomorphism(m1, m2) is not None
