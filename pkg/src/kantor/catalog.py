"""Named matroids used throughout the tests and the CLI."""

from dataclasses import replace
from functools import lru_cache
from itertools import combinations, product

from .errors import UnknownCatalogEntry, UnsupportedParam
from .matroid import delete, from_bases, from_flats, mask_of

# The five four-element circuit-hyperplanes of the Vamos matroid, 0-based.
# In 1-based labels: {1,2,3,4}, {1,2,5,6}, {1,2,7,8}, {3,4,5,6}, {3,4,7,8}.
VAMOS_CIRCUITS = ((0, 1, 2, 3), (0, 1, 4, 5), (0, 1, 6, 7), (2, 3, 4, 5), (2, 3, 6, 7))


@lru_cache(maxsize=None)
def vamos():
    skip = {mask_of(c) for c in VAMOS_CIRCUITS}
    bases = [mask_of(c) for c in combinations(range(8), 4) if mask_of(c) not in skip]
    return from_bases(8, bases, labels=[str(i) for i in range(1, 9)], name="vamos")


def uniform(r, n):
    if not 0 <= r <= n:
        raise UnsupportedParam(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}", witness=(r, n))
    levels = [[mask_of(c) for c in combinations(range(n), k)] for k in range(r)]
    levels.append([(1 << n) - 1])
    return from_flats(n, levels, name=f"U{r},{n}")


def boolean(n):
    return uniform(n, n)


FANO_LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


@lru_cache(maxsize=None)
def fano():
    lines = {mask_of(c) for c in FANO_LINES}
    bases = [mask_of(c) for c in combinations(range(7), 3) if mask_of(c) not in lines]
    return from_bases(7, bases, name="fano")


def _projective_points(q, dim):
    """Normalised representatives of the 1-dimensional subspaces of GF(q)^dim."""
    pts = []
    for v in product(range(q), repeat=dim):
        if any(v):
            lead = next(x for x in v if x)
            if lead == 1:
                pts.append(v)
    return pts


def _span(vectors, q, dim):
    out = set()
    for coeffs in product(range(q), repeat=len(vectors)):
        out.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % q for i in range(dim)))
    return out


@lru_cache(maxsize=None)
def pg3(q):
    """PG(3, q): points are 1-spaces of GF(q)^4, flats are subspaces."""
    if q not in (2, 3):
        raise UnsupportedParam(f"pg3 supports q in (2, 3), got {q}", witness=q)
    pts = _projective_points(q, 4)
    where = {p: i for i, p in enumerate(pts)}

    def flat(vectors):
        m = 0
        for v in _span(vectors, q, 4):
            if any(v):
                lead = next(x for x in v if x)
                inv = pow(lead, q - 2, q)
                m |= 1 << where[tuple(x * inv % q for x in v)]
        return m

    levels = [{0}, set(), set(), set(), set()]
    for k in (1, 2, 3):
        for combo in combinations(pts, k):
            f = flat(combo)
            if bin(f).count("1") == (q ** k - 1) // (q - 1):
                levels[k].add(f)
    levels[4].add((1 << len(pts)) - 1)
    return from_flats(len(pts), [sorted(lv) for lv in levels], name=f"PG(3,{q})")


def pg3_minus(q, k=1):
    """PG(3, q) with its last ``k`` points deleted."""
    m = pg3(q)
    gone = ((1 << k) - 1) << (m.n - k)
    out = delete(m, gone)
    return replace(out, name=f"PG(3,{q})-{k}")


ENTRIES = {
    "vamos": (vamos, 0),
    "uniform": (uniform, 2),
    "boolean": (boolean, 1),
    "fano": (fano, 0),
    "pg3": (pg3, 1),
    "pg3-minus": (pg3_minus, 2),
}


def catalog(name, *params):
    try:
        builder, arity = ENTRIES[name]
    except KeyError:
        raise UnknownCatalogEntry(f"unknown catalog entry {name!r}", witness=name) from None
    if name == "pg3-minus" and len(params) == 1:
        params = (params[0], 1)
    if len(params) != arity:
        raise UnsupportedParam(f"{name} takes {arity} parameter(s), got {len(params)}", witness=params)
    try:
        params = tuple(int(p) for p in params)
    except ValueError:
        raise UnsupportedParam(f"non-integer parameter for {name}: {params}", witness=params) from None
    return builder(*params)
