# cython: language_level=3
"""Compiled polynomial term kernels; semantics mirror ``_ref`` exactly."""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

ctypedef long long i64


cdef struct TermBuf:
    i64* coef
    i64* exps
    i64* keys
    Py_ssize_t n


cdef inline void tb_init(TermBuf* tb) noexcept:
    tb.coef = NULL
    tb.exps = NULL
    tb.keys = NULL
    tb.n = 0


cdef int tb_alloc(TermBuf* tb, Py_ssize_t n, int nv, int nk) except -1:
    cdef Py_ssize_t cap = n if n > 0 else 1
    tb.n = n
    tb.coef = <i64*> malloc(cap * sizeof(i64))
    tb.exps = <i64*> malloc(cap * nv * sizeof(i64))
    tb.keys = <i64*> malloc(cap * nk * sizeof(i64))
    if tb.coef == NULL or tb.exps == NULL or tb.keys == NULL:
        free(tb.coef)
        free(tb.exps)
        free(tb.keys)
        tb_init(tb)
        raise MemoryError()
    return 0


cdef void tb_free(TermBuf* tb) noexcept:
    free(tb.coef)
    free(tb.exps)
    free(tb.keys)
    tb_init(tb)


cdef inline int key_cmp(i64* a, i64* b, int nk) noexcept nogil:
    cdef int i
    for i in range(nk):
        if a[i] > b[i]:
            return 1
        if a[i] < b[i]:
            return -1
    return 0


cdef inline i64 mod_inv(i64 a, i64 p) noexcept nogil:
    cdef i64 result = 1
    cdef i64 base = a % p
    cdef i64 n = p - 2
    while n:
        if n & 1:
            result = (result * base) % p
        base = (base * base) % p
        n >>= 1
    return result


cdef i64* flatten_wm(object wm, int* nk_out, int* nv_out) except NULL:
    cdef int nk = len(wm)
    cdef int nv = len(wm[0])
    cdef i64* flat = <i64*> malloc(nk * nv * sizeof(i64))
    if flat == NULL:
        raise MemoryError()
    cdef int i, j
    for j in range(nk):
        row = wm[j]
        for i in range(nv):
            flat[j * nv + i] = row[i]
    nk_out[0] = nk
    nv_out[0] = nv
    return flat


cdef int pack_terms(object terms, TermBuf* tb, int nv, int nk, i64* wmflat) except -1:
    cdef Py_ssize_t n = len(terms)
    tb_alloc(tb, n, nv, nk)
    cdef Py_ssize_t idx = 0
    cdef int i, j
    cdef i64 s
    for t in terms:
        tb.coef[idx] = t[0]
        e = t[1]
        for i in range(nv):
            tb.exps[idx * nv + i] = e[i]
        for j in range(nk):
            s = 0
            for i in range(nv):
                s += wmflat[j * nv + i] * tb.exps[idx * nv + i]
            tb.keys[idx * nk + j] = s
        idx += 1
    return 0


cdef object unpack_terms(TermBuf* tb, int nv):
    cdef list out = []
    cdef Py_ssize_t t
    cdef int i
    for t in range(tb.n):
        e = tuple([tb.exps[t * nv + i] for i in range(nv)])
        out.append((tb.coef[t], e))
    return tuple(out)


cdef inline void copy_term(TermBuf* dst, Py_ssize_t m, TermBuf* src, Py_ssize_t i,
                           int nv, int nk) noexcept nogil:
    dst.coef[m] = src.coef[i]
    memcpy(&dst.exps[m * nv], &src.exps[i * nv], nv * sizeof(i64))
    memcpy(&dst.keys[m * nk], &src.keys[i * nk], nk * sizeof(i64))


cdef int merge_bufs(TermBuf* a, Py_ssize_t a0, TermBuf* b, TermBuf* out,
                    i64 p, int nv, int nk) except -1:
    """Merge a[a0:] with b into out (freshly allocated), adding mod p."""
    tb_alloc(out, (a.n - a0) + b.n, nv, nk)
    cdef Py_ssize_t i = a0, j = 0, m = 0
    cdef int c
    cdef i64 s
    while i < a.n and j < b.n:
        c = key_cmp(&a.keys[i * nk], &b.keys[j * nk], nk)
        if c > 0:
            copy_term(out, m, a, i, nv, nk)
            i += 1
            m += 1
        elif c < 0:
            copy_term(out, m, b, j, nv, nk)
            j += 1
            m += 1
        else:
            s = (a.coef[i] + b.coef[j]) % p
            if s:
                out.coef[m] = s
                memcpy(&out.exps[m * nv], &a.exps[i * nv], nv * sizeof(i64))
                memcpy(&out.keys[m * nk], &a.keys[i * nk], nk * sizeof(i64))
                m += 1
            i += 1
            j += 1
    while i < a.n:
        copy_term(out, m, a, i, nv, nk)
        i += 1
        m += 1
    while j < b.n:
        copy_term(out, m, b, j, nv, nk)
        j += 1
        m += 1
    out.n = m
    return 0


def add_terms(ta, tb, p_, wm):
    """ta + tb in canonical form."""
    cdef int nk = 0, nv = 0
    cdef i64 p = p_
    cdef i64* wmflat = flatten_wm(wm, &nk, &nv)
    cdef TermBuf a, b, out
    tb_init(&a)
    tb_init(&b)
    tb_init(&out)
    try:
        pack_terms(ta, &a, nv, nk, wmflat)
        pack_terms(tb, &b, nv, nk, wmflat)
        merge_bufs(&a, 0, &b, &out, p, nv, nk)
        return unpack_terms(&out, nv)
    finally:
        tb_free(&a)
        tb_free(&b)
        tb_free(&out)
        free(wmflat)


def mul_terms(ta, tb, p_, wm):
    """ta * tb in canonical form."""
    if not ta or not tb:
        return ()
    cdef int nk = 0, nv = 0
    cdef i64 p = p_
    cdef i64* wmflat = flatten_wm(wm, &nk, &nv)
    cdef TermBuf a, b, merged
    cdef TermBuf* runs = NULL
    cdef Py_ssize_t nruns = 0, total = 0, i, j, t, half
    cdef int k
    tb_init(&a)
    tb_init(&b)
    try:
        pack_terms(ta, &a, nv, nk, wmflat)
        pack_terms(tb, &b, nv, nk, wmflat)
        total = a.n
        runs = <TermBuf*> malloc(total * sizeof(TermBuf))
        if runs == NULL:
            raise MemoryError()
        for i in range(total):
            tb_init(&runs[i])
        # products with a fixed left term stay sorted (keys are additive);
        # p prime keeps every product coefficient nonzero
        for i in range(total):
            tb_alloc(&runs[i], b.n, nv, nk)
            for j in range(b.n):
                runs[i].coef[j] = (a.coef[i] * b.coef[j]) % p
                for k in range(nv):
                    runs[i].exps[j * nv + k] = a.exps[i * nv + k] + b.exps[j * nv + k]
                for k in range(nk):
                    runs[i].keys[j * nk + k] = a.keys[i * nk + k] + b.keys[j * nk + k]
        nruns = total
        while nruns > 1:
            half = 0
            t = 0
            while t + 1 < nruns:
                merge_bufs(&runs[t], 0, &runs[t + 1], &merged, p, nv, nk)
                tb_free(&runs[t])
                tb_free(&runs[t + 1])
                runs[t] = merged  # keep ownership inside the array
                runs[half] = runs[t]
                if half != t:
                    tb_init(&runs[t])
                half += 1
                t += 2
            if t < nruns:
                runs[half] = runs[t]
                if half != t:
                    tb_init(&runs[t])
                half += 1
            nruns = half
        return unpack_terms(&runs[0], nv)
    finally:
        if runs != NULL:
            for i in range(total):
                tb_free(&runs[i])
            free(runs)
        tb_free(&a)
        tb_free(&b)
        free(wmflat)


def divmod_terms(tf, gs, p_, wm, want_quotients=False):
    """Multivariate division of tf by the list gs.

    Returns (quotients, remainder); quotients is None unless requested.
    The first divisor (in gs order) whose leading monomial divides the
    current lead term is used at each step.
    """
    cdef int nk = 0, nv = 0
    cdef i64 p = p_
    cdef i64* wmflat = flatten_wm(wm, &nk, &nv)
    cdef Py_ssize_t ngs = len(gs)
    cdef TermBuf h, shifted, newh
    cdef TermBuf* G = NULL
    cdef Py_ssize_t h0 = 0, i, j, gi
    cdef int k, divisible
    cdef i64 ch, mc, nmc
    cdef i64* me = NULL
    cdef i64* mk = NULL
    cdef list rem = []
    quots = [[] for _ in range(ngs)] if want_quotients else None
    tb_init(&h)
    tb_init(&shifted)
    try:
        pack_terms(tf, &h, nv, nk, wmflat)
        if ngs:
            G = <TermBuf*> malloc(ngs * sizeof(TermBuf))
            if G == NULL:
                raise MemoryError()
        for i in range(ngs):
            tb_init(&G[i])
        for i in range(ngs):
            pack_terms(gs[i], &G[i], nv, nk, wmflat)
        me = <i64*> malloc((nv if nv else 1) * sizeof(i64))
        mk = <i64*> malloc((nk if nk else 1) * sizeof(i64))
        if me == NULL or mk == NULL:
            raise MemoryError()
        while h0 < h.n:
            ch = h.coef[h0]
            gi = -1
            for i in range(ngs):
                divisible = 1
                for k in range(nv):
                    if h.exps[h0 * nv + k] < G[i].exps[k]:
                        divisible = 0
                        break
                if divisible:
                    gi = i
                    break
            if gi < 0:
                rem.append((ch, tuple([h.exps[h0 * nv + k] for k in range(nv)])))
                h0 += 1
                continue
            mc = (ch * mod_inv(G[gi].coef[0], p)) % p
            for k in range(nv):
                me[k] = h.exps[h0 * nv + k] - G[gi].exps[k]
            for k in range(nk):
                mk[k] = h.keys[h0 * nk + k] - G[gi].keys[k]
            if want_quotients:
                quots[gi].append((mc, tuple([me[k] for k in range(nv)])))
            nmc = p - mc
            tb_alloc(&shifted, G[gi].n, nv, nk)
            for j in range(G[gi].n):
                shifted.coef[j] = (nmc * G[gi].coef[j]) % p
                for k in range(nv):
                    shifted.exps[j * nv + k] = me[k] + G[gi].exps[j * nv + k]
                for k in range(nk):
                    shifted.keys[j * nk + k] = mk[k] + G[gi].keys[j * nk + k]
            tb_init(&newh)
            merge_bufs(&h, h0, &shifted, &newh, p, nv, nk)
            tb_free(&h)
            tb_free(&shifted)
            h = newh
            h0 = 0
        if want_quotients:
            return tuple(tuple(q) for q in quots), tuple(rem)
        return None, tuple(rem)
    finally:
        tb_free(&h)
        tb_free(&shifted)
        if G != NULL:
            for i in range(ngs):
                tb_free(&G[i])
            free(G)
        free(me)
        free(mk)
        free(wmflat)
