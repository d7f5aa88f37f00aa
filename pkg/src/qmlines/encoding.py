"""Bit-set encoding of betweenness relations.

The n(n-1)(n-2) ordered triples of distinct point indices, sorted
lexicographically, define the bit positions of the encoding.  Everything
downstream (canonical forms, enumeration order, file output) relies on this
fixed order, so it lives in one place.
"""

from functools import lru_cache
from itertools import combinations, permutations, product


def triple_count(n: int) -> int:
    return n * (n - 1) * (n - 2)


@lru_cache(maxsize=None)
def ordered_triples(n: int) -> tuple[tuple[int, int, int], ...]:
    """All ordered triples of distinct indices in 0..n-1, lex order."""
    return tuple(t for t in product(range(n), repeat=3) if len(set(t)) == 3)


@lru_cache(maxsize=None)
def triple_position(n: int) -> dict[tuple[int, int, int], int]:
    return {t: i for i, t in enumerate(ordered_triples(n))}


def mask_from_triples(n, triples) -> int:
    pos = triple_position(n)
    mask = 0
    for t in triples:
        t = tuple(t)
        if t not in pos:
            raise ValueError(f"not an ordered triple of distinct points in range: {t}")
        mask |= 1 << pos[t]
    return mask


def triples_from_mask(n: int, mask: int) -> tuple[tuple[int, int, int], ...]:
    lt = ordered_triples(n)
    return tuple(lt[i] for i in range(len(lt)) if mask >> i & 1)


@lru_cache(maxsize=None)
def conflict_masks(n: int) -> tuple[int, ...]:
    """conflict_masks(n)[i] has the bits of the two triples excluded by triple i.

    Membership of xyz rules out yxz and xzy.
    """
    pos = triple_position(n)
    out = []
    for (x, y, z) in ordered_triples(n):
        out.append(1 << pos[(y, x, z)] | 1 << pos[(x, z, y)])
    return tuple(out)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[tuple[int, ...], ...]:
    """All n! relabelings of 0..n-1 in lexicographic order."""
    return tuple(permutations(range(n)))


@lru_cache(maxsize=None)
def permutation_bit_maps(n: int) -> tuple[tuple[int, ...], ...]:
    """For each relabeling p, the induced map on bit positions.

    bit i (triple (x,y,z)) maps to the position of (p[x],p[y],p[z]).
    """
    pos = triple_position(n)
    lt = ordered_triples(n)
    maps = []
    for p in all_permutations(n):
        maps.append(tuple(pos[(p[x], p[y], p[z])] for (x, y, z) in lt))
    return tuple(maps)


def apply_bit_map(mask: int, bit_map) -> int:
    image = 0
    while mask:
        low = mask & -mask
        image |= 1 << bit_map[low.bit_length() - 1]
        mask ^= low
    return image


@lru_cache(maxsize=None)
def permutation_byte_tables(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Per relabeling, per byte of the encoding, a 256-entry image table.

    Lets a full-mask image be computed with one table lookup per byte; the
    canonical-form batch kernels lean on this.
    """
    nbytes = (triple_count(n) + 7) // 8
    tables = []
    for bit_map in permutation_bit_maps(n):
        per_byte = []
        for bi in range(nbytes):
            row = []
            for value in range(256):
                img = 0
                v = value
                while v:
                    low = v & -v
                    bit = 8 * bi + low.bit_length() - 1
                    if bit < len(bit_map):
                        img |= 1 << bit_map[bit]
                    v ^= low
                row.append(img)
            per_byte.append(tuple(row))
        tables.append(tuple(per_byte))
    return tuple(tables)


@lru_cache(maxsize=None)
def line_trigger_masks(n: int) -> dict[tuple[int, int, int], int]:
    """For distinct (x, y, z): bits whose presence puts z on the line of (x, y).

    These are the triples zxy, xzy and xyz.
    """
    pos = triple_position(n)
    out = {}
    for (x, y, z) in ordered_triples(n):
        out[(x, y, z)] = 1 << pos[(z, x, y)] | 1 << pos[(x, z, y)] | 1 << pos[(x, y, z)]
    return out


@lru_cache(maxsize=None)
def supports(n: int) -> tuple[tuple[int, int, int], ...]:
    """All 3-point supports (unordered, as sorted tuples)."""
    return tuple(combinations(range(n), 3))
