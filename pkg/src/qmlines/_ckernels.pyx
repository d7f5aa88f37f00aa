# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the exhaustive hot loops.

Twin of ``qmlines._kernels_py``: same functions, same iteration orders, same
results, minus the interpreter overhead.  Table construction is shared with
the pure backend so the two cannot drift.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free

from ._kernels_py import (
    _betweenness_pair_indices,
    _pairs,
    _triangle_checks_by_depth,
)
from .encoding import permutation_bit_maps, triple_count

BACKEND = "cython"


cdef struct ByteTables:
    uint64_t *data  # nperm * nbytes * 256, row-major
    int nperm
    int nbytes


cdef int _build_byte_tables(int n, ByteTables *bt) except -1:
    bit_maps = permutation_bit_maps(n)
    cdef int ntrip = triple_count(n)
    cdef int nperm = len(bit_maps)
    cdef int nbytes = (ntrip + 7) // 8
    cdef uint64_t *data = <uint64_t *> calloc(max(1, nperm * nbytes * 256), sizeof(uint64_t))
    if data == NULL:
        raise MemoryError()
    cdef int p, bi, v, k, bit
    cdef uint64_t img
    for p in range(nperm):
        bm = bit_maps[p]
        for bi in range(nbytes):
            for v in range(256):
                img = 0
                for k in range(8):
                    bit = 8 * bi + k
                    if (v >> k) & 1 and bit < ntrip:
                        img |= (<uint64_t> 1) << (<int> bm[bit])
                data[(p * nbytes + bi) * 256 + v] = img
    bt.data = data
    bt.nperm = nperm
    bt.nbytes = nbytes
    return 0


cdef inline uint64_t _canon(uint64_t mask, ByteTables *bt) nogil:
    cdef uint64_t best = mask
    cdef uint64_t img
    cdef int p, bi
    for p in range(bt.nperm):
        img = 0
        for bi in range(bt.nbytes):
            img |= bt.data[(p * bt.nbytes + bi) * 256 + ((mask >> (8 * bi)) & 0xFF)]
        if img < best:
            best = img
    return best


def canonical_batch(int n, masks):
    """Canonical (minimum-over-relabelings) encoding for each mask."""
    cdef Py_ssize_t count = len(masks)
    cdef Py_ssize_t i
    cdef ByteTables bt
    _build_byte_tables(n, &bt)
    cdef uint64_t *arr = <uint64_t *> calloc(max(1, count), sizeof(uint64_t))
    if arr == NULL:
        free(bt.data)
        raise MemoryError()
    try:
        for i in range(count):
            arr[i] = masks[i]
        with nogil:
            for i in range(count):
                arr[i] = _canon(arr[i], &bt)
        return [arr[i] for i in range(count)]
    finally:
        free(arr)
        free(bt.data)


cdef struct SearchTables:
    int npairs
    int ntrip
    int *check_abc  # 3 per check, grouped by completing depth
    int *check_off  # npairs + 1 offsets into check_abc
    int *bet_idx    # 3 per encoding bit: pair indices (xz, xy, yz)


cdef int _build_search_tables(int n, SearchTables *st) except -1:
    by_depth = _triangle_checks_by_depth(n)
    bet = _betweenness_pair_indices(n)
    cdef int npairs = n * (n - 1)
    cdef int ntrip = triple_count(n)
    cdef int nchecks = sum(len(group) for group in by_depth)
    st.npairs = npairs
    st.ntrip = ntrip
    st.check_abc = <int *> calloc(max(1, 3 * nchecks), sizeof(int))
    st.check_off = <int *> calloc(npairs + 1, sizeof(int))
    st.bet_idx = <int *> calloc(max(1, 3 * ntrip), sizeof(int))
    if st.check_abc == NULL or st.check_off == NULL or st.bet_idx == NULL:
        raise MemoryError()
    cdef int k = 0, d
    for d in range(npairs):
        st.check_off[d] = k
        for (a, b, c) in by_depth[d]:
            st.check_abc[3 * k] = a
            st.check_abc[3 * k + 1] = b
            st.check_abc[3 * k + 2] = c
            k += 1
    st.check_off[npairs] = k
    for d in range(ntrip):
        xz, xy, yz = bet[d]
        st.bet_idx[3 * d] = xz
        st.bet_idx[3 * d + 1] = xy
        st.bet_idx[3 * d + 2] = yz
    return 0


cdef void _free_search_tables(SearchTables *st) noexcept:
    free(st.check_abc)
    free(st.check_off)
    free(st.bet_idx)


cdef inline uint64_t _betweenness_mask(int *vals, SearchTables *st) nogil:
    cdef uint64_t mask = 0
    cdef int d
    for d in range(st.ntrip):
        if vals[st.bet_idx[3 * d]] == vals[st.bet_idx[3 * d + 1]] + vals[st.bet_idx[3 * d + 2]]:
            mask |= (<uint64_t> 1) << d
    return mask


def integer_canon_witnesses(int n, int kmax):
    """Sweep all quasi-metrics with entries in 1..kmax; map canonical
    betweenness encodings to the lexicographically first witness entries."""
    cdef SearchTables st
    cdef ByteTables bt
    _build_search_tables(n, &st)
    _build_byte_tables(n, &bt)
    cdef int npairs = st.npairs
    cdef int *vals = <int *> calloc(npairs, sizeof(int))
    if vals == NULL:
        _free_search_tables(&st)
        free(bt.data)
        raise MemoryError()
    result = {}
    cdef int depth = 0, k, ok
    cdef uint64_t mask
    cdef object canon
    try:
        while depth >= 0:
            vals[depth] += 1
            if vals[depth] > kmax:
                vals[depth] = 0
                depth -= 1
                continue
            ok = 1
            for k in range(st.check_off[depth], st.check_off[depth + 1]):
                if vals[st.check_abc[3 * k]] > vals[st.check_abc[3 * k + 1]] + vals[st.check_abc[3 * k + 2]]:
                    ok = 0
                    break
            if not ok:
                continue
            if depth == npairs - 1:
                mask = _betweenness_mask(vals, &st)
                canon = _canon(mask, &bt)
                if canon not in result:
                    result[canon] = tuple(vals[k] for k in range(npairs))
            else:
                depth += 1
        return result
    finally:
        free(vals)
        _free_search_tables(&st)
        free(bt.data)


def find_integer_witness(int n, int kmax, target_masks):
    """First (lex order) valid integer matrix whose raw betweenness mask is in
    target_masks, or None after exhausting the search space."""
    cdef SearchTables st
    _build_search_tables(n, &st)
    cdef int npairs = st.npairs
    targets = sorted(set(target_masks))
    cdef int ntargets = len(targets)
    cdef uint64_t *tgt = <uint64_t *> calloc(max(1, ntargets), sizeof(uint64_t))
    cdef int *vals = <int *> calloc(npairs, sizeof(int))
    if tgt == NULL or vals == NULL:
        _free_search_tables(&st)
        free(tgt)
        free(vals)
        raise MemoryError()
    cdef int i
    for i in range(ntargets):
        tgt[i] = targets[i]
    cdef int depth = 0, k, ok, hit
    cdef uint64_t mask
    try:
        while depth >= 0:
            vals[depth] += 1
            if vals[depth] > kmax:
                vals[depth] = 0
                depth -= 1
                continue
            ok = 1
            for k in range(st.check_off[depth], st.check_off[depth + 1]):
                if vals[st.check_abc[3 * k]] > vals[st.check_abc[3 * k + 1]] + vals[st.check_abc[3 * k + 2]]:
                    ok = 0
                    break
            if not ok:
                continue
            if depth == npairs - 1:
                mask = _betweenness_mask(vals, &st)
                hit = 0
                for i in range(ntargets):
                    if tgt[i] == mask:
                        hit = 1
                        break
                if hit:
                    return tuple(vals[k] for k in range(npairs))
            else:
                depth += 1
        return None
    finally:
        free(tgt)
        free(vals)
        _free_search_tables(&st)


cdef inline int _digraph_mask_of(uint64_t arc_mask, int n, int *pair_i, int *pair_j,
                                 SearchTables *st, int *dist, uint64_t *mask_out) nogil:
    """Shortest-path betweenness of one digraph; 0 if not strongly connected."""
    cdef int npairs = n * (n - 1)
    cdef int inf = n + 1
    cdef int i, j, k, v
    for i in range(n):
        for j in range(n):
            dist[i * n + j] = 0 if i == j else inf
    for k in range(npairs):
        if (arc_mask >> k) & 1:
            dist[pair_i[k] * n + pair_j[k]] = 1
    for k in range(n):
        for i in range(n):
            if dist[i * n + k] >= inf:
                continue
            for j in range(n):
                v = dist[i * n + k] + dist[k * n + j]
                if v < dist[i * n + j]:
                    dist[i * n + j] = v
    for i in range(n):
        for j in range(n):
            if dist[i * n + j] >= inf:
                return 0
    cdef uint64_t mask = 0
    cdef int xz, xy, yz
    for k in range(st.ntrip):
        xz = st.bet_idx[3 * k]
        xy = st.bet_idx[3 * k + 1]
        yz = st.bet_idx[3 * k + 2]
        # bet_idx holds pair indices; translate through the pair arrays
        if dist[pair_i[xz] * n + pair_j[xz]] == \
                dist[pair_i[xy] * n + pair_j[xy]] + dist[pair_i[yz] * n + pair_j[yz]]:
            mask |= (<uint64_t> 1) << k
    mask_out[0] = mask
    return 1


def digraph_canon_witnesses(int n):
    """Sweep all strongly connected digraphs; map canonical betweenness
    encodings to the first realizing arc mask."""
    cdef SearchTables st
    cdef ByteTables bt
    _build_search_tables(n, &st)
    _build_byte_tables(n, &bt)
    pairs = _pairs(n)
    cdef int npairs = len(pairs)
    cdef int *pair_i = <int *> calloc(npairs, sizeof(int))
    cdef int *pair_j = <int *> calloc(npairs, sizeof(int))
    cdef int *dist = <int *> calloc(n * n, sizeof(int))
    if pair_i == NULL or pair_j == NULL or dist == NULL:
        raise MemoryError()
    cdef int k
    for k in range(npairs):
        pair_i[k] = pairs[k][0]
        pair_j[k] = pairs[k][1]
    result = {}
    cdef uint64_t arc_mask, mask
    cdef object canon
    try:
        for arc_mask in range(<uint64_t> 1 << npairs):
            if _digraph_mask_of(arc_mask, n, pair_i, pair_j, &st, dist, &mask):
                canon = _canon(mask, &bt)
                if canon not in result:
                    result[canon] = arc_mask
        return result
    finally:
        free(pair_i)
        free(pair_j)
        free(dist)
        _free_search_tables(&st)
        free(bt.data)


def find_digraph_witness(int n, target_masks):
    """First arc mask of a strongly connected digraph whose betweenness mask
    is in target_masks, or None."""
    cdef SearchTables st
    _build_search_tables(n, &st)
    pairs = _pairs(n)
    cdef int npairs = len(pairs)
    targets = sorted(set(target_masks))
    cdef int ntargets = len(targets)
    cdef int *pair_i = <int *> calloc(npairs, sizeof(int))
    cdef int *pair_j = <int *> calloc(npairs, sizeof(int))
    cdef int *dist = <int *> calloc(n * n, sizeof(int))
    cdef uint64_t *tgt = <uint64_t *> calloc(max(1, ntargets), sizeof(uint64_t))
    if pair_i == NULL or pair_j == NULL or dist == NULL or tgt == NULL:
        raise MemoryError()
    cdef int k, i
    for k in range(npairs):
        pair_i[k] = pairs[k][0]
        pair_j[k] = pairs[k][1]
    for i in range(ntargets):
        tgt[i] = targets[i]
    cdef uint64_t arc_mask, mask
    try:
        for arc_mask in range(<uint64_t> 1 << npairs):
            if _digraph_mask_of(arc_mask, n, pair_i, pair_j, &st, dist, &mask):
                for i in range(ntargets):
                    if tgt[i] == mask:
                        return int(arc_mask)
        return None
    finally:
        free(pair_i)
        free(pair_j)
        free(dist)
        free(tgt)
        _free_search_tables(&st)
