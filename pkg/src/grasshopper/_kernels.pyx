# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same contracts as ``_kernels_py``.

``dense_alpha_mod`` works in Z/pZ with p < 2**62 so a sum of two residues
never overflows uint64.  Exact values are rebuilt by CRT in ``kernels``.
"""
from libc.stdint cimport uint8_t, uint16_t, uint64_t, int64_t
from libc.stdlib cimport malloc, calloc, free


cdef extern from *:
    int __builtin_ctzll(unsigned long long)

BACKEND = "cython"


def dense_alpha_mod(long long u, unsigned long long mask, unsigned long long p):
    cdef uint64_t size = mask + 1
    cdef uint64_t *f = <uint64_t *> calloc(size, sizeof(uint64_t))
    cdef uint8_t *pop = <uint8_t *> calloc(size, sizeof(uint8_t))
    cdef uint16_t *tot = <uint16_t *> calloc(size, sizeof(uint16_t))
    cdef uint64_t m, low, rest, bits, b, acc
    cdef long long n, s, v
    if f == NULL or pop == NULL or tot == NULL:
        free(f); free(pop); free(tot)
        raise MemoryError("dense table of %d entries" % size)
    try:
        for m in range(1, size):
            low = m & (~m + 1)
            rest = m ^ low
            n = pop[rest] + 1
            s = tot[rest] + __builtin_ctzll(low)
            pop[m] = <uint8_t> n
            tot[m] = <uint16_t> s
            v = s - (n - 1) * u
            if v < 0:
                continue
            if n == 1:
                f[m] = 1 % p
            elif v == 0:
                if m & 1:
                    f[m] = f[m ^ 1]
            else:
                acc = 0
                bits = m
                while bits:
                    b = bits & (~bits + 1)
                    bits ^= b
                    if b > 1 and not (m & (b >> 1)):
                        acc += f[m - (b >> 1)]
                        if acc >= p:
                            acc -= p
                f[m] = acc
        return f[mask]
    finally:
        free(f); free(pop); free(tot)



def subset_order(jumps, mines):
    cdef int n = len(jumps)
    cdef uint64_t full = (<uint64_t> 1 << n) - 1
    cdef uint64_t size = full + 1
    cdef int nm = len(mines)
    cdef int64_t *a = <int64_t *> malloc(max(n, 1) * sizeof(int64_t))
    cdef int64_t *mine = <int64_t *> malloc(max(nm, 1) * sizeof(int64_t))
    cdef int64_t *sums = <int64_t *> calloc(size, sizeof(int64_t))
    cdef uint8_t *reach = <uint8_t *> calloc(size, sizeof(uint8_t))
    cdef uint8_t *pred = <uint8_t *> calloc(size, sizeof(uint8_t))
    cdef uint64_t m, low
    cdef int j, lo, hi, mid, hit
    cdef int64_t pos
    if a == NULL or mine == NULL or sums == NULL or reach == NULL or pred == NULL:
        free(a); free(mine); free(sums); free(reach); free(pred)
        raise MemoryError("subset lattice of %d states" % size)
    try:
        for j in range(n):
            a[j] = jumps[j]
        for j, x in enumerate(sorted(mines)):
            mine[j] = x
        reach[0] = 1
        for m in range(1, size):
            low = m & (~m + 1)
            sums[m] = sums[m ^ low] + a[__builtin_ctzll(low)]
            if m != full:
                pos = sums[m]
                lo = 0
                hi = nm
                hit = 0
                while lo < hi:
                    mid = (lo + hi) >> 1
                    if mine[mid] < pos:
                        lo = mid + 1
                    elif mine[mid] > pos:
                        hi = mid
                    else:
                        hit = 1
                        break
                if hit:
                    continue
            for j in range(n):
                if (m >> j) & 1 and reach[m ^ (<uint64_t> 1 << j)]:
                    reach[m] = 1
                    pred[m] = <uint8_t> j
                    break
        if not reach[full]:
            return None
        order = []
        m = full
        while m:
            j = pred[m]
            order.append(j)
            m ^= <uint64_t> 1 << j
        order.reverse()
        return order
    finally:
        free(a); free(mine); free(sums); free(reach); free(pred)
