# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled subspace-scan kernels. Same contract as ``_pykernels``."""

from libc.stdlib cimport malloc, calloc, free

cdef enum:
    MAXM = 32


cdef inline bint _advance(int* vals, int n, int p) noexcept nogil:
    # base-p counter, last digit least significant; False after wrapping to zero
    cdef int t = n - 1
    while t >= 0:
        vals[t] += 1
        if vals[t] < p:
            return True
        vals[t] = 0
        t -= 1
    return False


cdef long long _span_hits(int p, int m, int k, const int* rows, const unsigned char* member,
                          const long long* pw, int* coef, int* v) noexcept nogil:
    # number of nonzero members of span(rows) flagged in ``member``
    cdef int i, j, t
    cdef long long enc, hits = 0
    for i in range(k):
        coef[i] = 0
    for j in range(m):
        v[j] = 0
    while True:
        t = k - 1
        while t >= 0:
            # each touched digit adds its row once (wrap p-1 -> 0 is also +1)
            for j in range(m):
                v[j] += rows[t * m + j]
                if v[j] >= p:
                    v[j] -= p
            coef[t] += 1
            if coef[t] < p:
                break
            coef[t] = 0
            t -= 1
        if t < 0:
            return hits
        enc = 0
        for j in range(m):
            enc += v[j] * pw[j]
        hits += member[enc]


cdef long long _orthogonal_columns(int p, int m, int k, const int* rows,
                                   const int* cols, int ncols) noexcept nogil:
    cdef int c, i, j
    cdef long long s, dead = 0
    cdef bint ok
    for c in range(ncols):
        ok = True
        for i in range(k):
            s = 0
            for j in range(m):
                s += rows[i * m + j] * cols[c * m + j]
            if s % p != 0:
                ok = False
                break
        if ok:
            dead += 1
    return dead


cdef long long _scan(int p, int m, int k, const int* patterns, int npat, int mode,
                     const unsigned char* member, const long long* pw,
                     const int* cols, int ncols) noexcept nogil:
    # mode 0: max member hits over subspaces; mode 1: max orthogonal-column count
    cdef int q, i, j, t, nfree
    cdef long long val, best = -1
    cdef int* rows = <int*> calloc(k * m + 1, sizeof(int))
    cdef int* fi = <int*> malloc((k * m + 1) * sizeof(int))
    cdef int* fj = <int*> malloc((k * m + 1) * sizeof(int))
    cdef int* vals = <int*> calloc(k * m + 1, sizeof(int))
    cdef int* coef = <int*> malloc((k + 1) * sizeof(int))
    cdef int v[MAXM]
    cdef bint ispiv[MAXM]
    cdef const int* pat
    for q in range(npat):
        pat = patterns + q * k
        for j in range(m):
            ispiv[j] = False
        for i in range(k):
            ispiv[pat[i]] = True
        for i in range(k * m):
            rows[i] = 0
        nfree = 0
        for i in range(k):
            rows[i * m + pat[i]] = 1
            for j in range(pat[i] + 1, m):
                if not ispiv[j]:
                    fi[nfree] = i
                    fj[nfree] = j
                    vals[nfree] = 0
                    nfree += 1
        while True:
            for t in range(nfree):
                rows[fi[t] * m + fj[t]] = vals[t]
            if mode == 0:
                val = _span_hits(p, m, k, rows, member, pw, coef, v)
            else:
                val = _orthogonal_columns(p, m, k, rows, cols, ncols)
            if val > best:
                best = val
            if not _advance(vals, nfree, p):
                break
    free(rows)
    free(fi)
    free(fj)
    free(vals)
    free(coef)
    return best


def _flatten_patterns(patterns, int k):
    flat = []
    for pat in patterns:
        if len(pat) != k:
            raise ValueError("pivot pattern has wrong length")
        flat.extend(pat)
    return flat


def max_intersection(int p, int m, int k, member, patterns):
    """Max over the given k-dim subspaces H of |{x in H, x != 0 : member[enc(x)]}|; -1 if none."""
    if m > MAXM:
        raise ValueError("ambient dimension too large for the compiled kernel")
    cdef const unsigned char[:] mem = bytes(member)
    if mem.shape[0] != p ** m:
        raise ValueError("membership table must have p^m entries")
    pats = list(patterns)
    cdef int npat = len(pats)
    flat = _flatten_patterns(pats, k)
    cdef int* cp = <int*> malloc((len(flat) + 1) * sizeof(int))
    cdef long long pw[MAXM]
    cdef long long best
    cdef int i
    for i in range(len(flat)):
        cp[i] = flat[i]
    pw[0] = 1
    for i in range(1, m):
        pw[i] = pw[i - 1] * p
    with nogil:
        best = _scan(p, m, k, cp, npat, 0, &mem[0], pw, NULL, 0)
    free(cp)
    return best


def max_orthogonal_columns(int p, int m, int k, columns, patterns):
    """Max over the given k-dim subspaces X of the number of columns orthogonal to all of X; -1 if none."""
    if m > MAXM:
        raise ValueError("ambient dimension too large for the compiled kernel")
    cols = [c for col in columns for c in col]
    cdef int ncols = len(cols) // m if m else 0
    pats = list(patterns)
    cdef int npat = len(pats)
    flat = _flatten_patterns(pats, k)
    cdef int* cp = <int*> malloc((len(flat) + 1) * sizeof(int))
    cdef int* cc = <int*> malloc((len(cols) + 1) * sizeof(int))
    cdef long long best
    cdef int i
    for i in range(len(flat)):
        cp[i] = flat[i]
    for i in range(len(cols)):
        cc[i] = cols[i]
    with nogil:
        best = _scan(p, m, k, cp, npat, 1, NULL, NULL, cc, ncols)
    free(cp)
    free(cc)
    return best
