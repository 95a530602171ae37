# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels.py``."""
from libc.stdlib cimport calloc, malloc, free

cdef enum:
    MAXN = 17

cdef long long binom[MAXN][MAXN]

cdef int FOUND = 1
cdef int EXHAUSTED = 0
cdef int OVER_BUDGET = -1


cdef extern from *:
    int __builtin_popcount(unsigned int) nogil


cdef inline int _pop(unsigned int x) nogil:
    return __builtin_popcount(x)


cdef bint _counts_feasible(long long *uncov, int d) nogil:
    cdef long long starts[MAXN]
    cdef long long need, rest
    cdef int i, l
    for i in range(d + 1):
        need = 0
        for l in range(i):
            if starts[l]:
                need += starts[l] * binom[d - l][i - l]
        rest = uncov[i] - need
        if rest < 0:
            return False
        starts[i] = rest
    return True


cdef inline void _mark(unsigned char *covered, long long *uncov, unsigned int sigma,
                       unsigned int diff, unsigned char val, int delta) nogil:
    cdef unsigned int t = diff
    cdef unsigned int e
    while True:
        e = sigma | t
        covered[e] = val
        uncov[_pop(e)] += delta
        if t == 0:
            break
        t = (t - 1) & diff


def interval_search(const unsigned char[:] member, int n, int d,
                    const int[:] order, const int[:] cand_off, const int[:] cand,
                    long long budget):
    cdef Py_ssize_t size = 1 << n
    cdef Py_ssize_t m = order.shape[0]
    cdef long long uncov[MAXN]
    cdef int a, b, r
    cdef Py_ssize_t s
    for a in range(MAXN):
        for b in range(MAXN):
            binom[a][b] = 0
        binom[a][0] = 1
    for a in range(1, MAXN):
        for b in range(1, a + 1):
            binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b]
    for r in range(MAXN):
        uncov[r] = 0
    for s in range(size):
        if member[s]:
            r = _pop(<unsigned int>s)
            if r <= d:
                uncov[r] += 1
    if m == 0:
        return FOUND, 0, []
    if not _counts_feasible(uncov, d):
        return EXHAUSTED, 0, []

    cdef unsigned char *covered = <unsigned char *>calloc(size, 1)
    cdef int *stack_p = <int *>malloc(m * sizeof(int))
    cdef int *stack_c = <int *>malloc(m * sizeof(int))
    if covered == NULL or stack_p == NULL or stack_c == NULL:
        free(covered); free(stack_p); free(stack_c)
        raise MemoryError()

    cdef int depth = 0
    cdef long long nodes = 0
    cdef int p = 0
    cdef int ci = -1
    cdef int end, status, k
    cdef unsigned int sigma, top, diff, t
    cdef bint placed, isfree
    result = []
    try:
        with nogil:
            while True:
                if ci < 0:
                    while p < m and covered[order[p]]:
                        p += 1
                    if p == m:
                        status = FOUND
                        break
                    ci = cand_off[p]
                sigma = order[p]
                placed = False
                end = cand_off[p + 1]
                while ci < end:
                    top = cand[ci]
                    diff = top ^ sigma
                    t = diff
                    isfree = True
                    while True:
                        if covered[sigma | t]:
                            isfree = False
                            break
                        if t == 0:
                            break
                        t = (t - 1) & diff
                    if isfree:
                        nodes += 1
                        if budget >= 0 and nodes > budget:
                            break
                        _mark(covered, uncov, sigma, diff, 1, -1)
                        if _counts_feasible(uncov, d):
                            stack_p[depth] = p
                            stack_c[depth] = ci
                            depth += 1
                            placed = True
                            break
                        _mark(covered, uncov, sigma, diff, 0, 1)
                    ci += 1
                if budget >= 0 and nodes > budget:
                    status = OVER_BUDGET
                    break
                if placed:
                    p += 1
                    ci = -1
                    continue
                if depth == 0:
                    status = EXHAUSTED
                    break
                depth -= 1
                p = stack_p[depth]
                ci = stack_c[depth]
                sigma = order[p]
                _mark(covered, uncov, sigma, <unsigned int>cand[ci] ^ sigma, 0, 1)
                ci += 1
        if status == FOUND:
            for k in range(depth):
                result.append((order[stack_p[k]], cand[stack_c[k]]))
    finally:
        free(covered)
        free(stack_p)
        free(stack_c)
    return status, nodes, result


def local_counts_feasible(const unsigned char[:] member, int n, int d):
    cdef unsigned int full = (1u << n) - 1
    cdef unsigned int X, base, t
    cdef long long counts[MAXN]
    cdef int target, r, side, a, b
    cdef bint ok = True
    for a in range(MAXN):
        for b in range(MAXN):
            binom[a][b] = 0
        binom[a][0] = 1
    for a in range(1, MAXN):
        for b in range(1, a + 1):
            binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b]
    with nogil:
        X = 0
        while X <= full and ok:
            target = d - (n - _pop(X))
            if target > 0:
                for side in range(2):
                    base = (full & ~X) if side else 0
                    for r in range(target + 1):
                        counts[r] = 0
                    t = X
                    while True:
                        r = _pop(t)
                        if r <= target and member[base | t]:
                            counts[r] += 1
                        if t == 0:
                            break
                        t = (t - 1) & X
                    if not _counts_feasible(counts, target):
                        ok = False
                        break
            X += 1
    return ok


def rank_mod_p(rows, int ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    cdef long long *mat = <long long *>malloc(nrows * ncols * sizeof(long long))
    if mat == NULL:
        raise MemoryError()
    cdef Py_ssize_t r, c, piv, rank = 0, col
    cdef long long inv, f, tmp, x
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(ncols):
                x = row[c] % p
                mat[r * ncols + c] = x
        for col in range(ncols):
            piv = -1
            for r in range(rank, nrows):
                if mat[r * ncols + col]:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for c in range(ncols):
                    tmp = mat[rank * ncols + c]
                    mat[rank * ncols + c] = mat[piv * ncols + c]
                    mat[piv * ncols + c] = tmp
            inv = _powmod(mat[rank * ncols + col], p - 2, p)
            for c in range(col, ncols):
                mat[rank * ncols + c] = mat[rank * ncols + c] * inv % p
            for r in range(nrows):
                if r != rank and mat[r * ncols + col]:
                    f = mat[r * ncols + col]
                    for c in range(col, ncols):
                        if mat[rank * ncols + c]:
                            mat[r * ncols + c] = ((mat[r * ncols + c] - f * mat[rank * ncols + c]) % p + p) % p
            rank += 1
            if rank == nrows:
                break
    finally:
        free(mat)
    return rank


cdef long long _powmod(long long b, long long e, long long m) nogil:
    cdef long long r = 1
    b %= m
    while e > 0:
        if e & 1:
            r = r * b % m
        b = b * b % m
        e >>= 1
    return r


cdef struct Links:
    int *top
    int *ulink
    int *dlink
    int *llink
    int *rlink
    int *length


cdef inline void _hide(Links *k, int p) nogil:
    cdef int q = p + 1
    cdef int it, u, d
    while q != p:
        it = k.top[q]
        if it <= 0:
            q = k.ulink[q]
        else:
            u = k.ulink[q]
            d = k.dlink[q]
            k.dlink[u] = d
            k.ulink[d] = u
            k.length[it] -= 1
            q += 1


cdef inline void _unhide(Links *k, int p) nogil:
    cdef int q = p - 1
    cdef int it, u, d
    while q != p:
        it = k.top[q]
        if it <= 0:
            q = k.dlink[q]
        else:
            u = k.ulink[q]
            d = k.dlink[q]
            k.dlink[u] = q
            k.ulink[d] = q
            k.length[it] += 1
            q -= 1


cdef inline void _cover(Links *k, int i) nogil:
    cdef int p = k.dlink[i]
    while p != i:
        _hide(k, p)
        p = k.dlink[p]
    k.rlink[k.llink[i]] = k.rlink[i]
    k.llink[k.rlink[i]] = k.llink[i]


cdef inline void _uncover(Links *k, int i) nogil:
    k.rlink[k.llink[i]] = i
    k.llink[k.rlink[i]] = i
    cdef int p = k.ulink[i]
    while p != i:
        _unhide(k, p)
        p = k.ulink[p]


def exact_cover(int nprimary, int nitems, const int[:] opt_off, const int[:] opt_items, long long budget):
    cdef int nopt = opt_off.shape[0] - 1
    cdef int total = nitems + 2 + opt_items.shape[0] + nopt
    cdef Links k
    k.top = <int *>calloc(total, sizeof(int))
    k.ulink = <int *>calloc(total, sizeof(int))
    k.dlink = <int *>calloc(total, sizeof(int))
    k.llink = <int *>calloc(nitems + 2, sizeof(int))
    k.rlink = <int *>calloc(nitems + 2, sizeof(int))
    k.length = <int *>calloc(nitems + 1, sizeof(int))
    cdef int *owner = <int *>calloc(total, sizeof(int))
    cdef int *chosen = <int *>calloc(nprimary + 1, sizeof(int))
    if (k.top == NULL or k.ulink == NULL or k.dlink == NULL or k.llink == NULL
            or k.rlink == NULL or k.length == NULL or owner == NULL or chosen == NULL):
        free(k.top); free(k.ulink); free(k.dlink); free(k.llink)
        free(k.rlink); free(k.length); free(owner); free(chosen)
        raise MemoryError()
    cdef int i, x, it, u, q, first, spacer, opt, best, bestlen, xl, p, j
    cdef int level = 0
    cdef long long nodes = 0
    cdef int status
    result = []
    try:
        for i in range(nitems + 1):
            k.ulink[i] = i
            k.dlink[i] = i
        for i in range(1, nprimary + 1):
            k.llink[i] = i - 1
            k.rlink[i - 1] = i
        k.llink[0] = nprimary
        k.rlink[nprimary] = 0
        for i in range(nprimary + 1, nitems + 1):
            k.llink[i] = i
            k.rlink[i] = i
        x = nitems + 1
        spacer = x
        for opt in range(nopt):
            first = x + 1
            for q in range(opt_off[opt], opt_off[opt + 1]):
                x += 1
                it = opt_items[q]
                k.top[x] = it
                owner[x] = opt
                u = k.ulink[it]
                k.ulink[x] = u
                k.dlink[u] = x
                k.dlink[x] = it
                k.ulink[it] = x
                k.length[it] += 1
            k.dlink[spacer] = x
            x += 1
            k.top[x] = -(opt + 1)
            k.ulink[x] = first
            spacer = x
        with nogil:
            while True:
                if k.rlink[0] == 0:
                    status = FOUND
                    break
                best = -1
                bestlen = total
                i = k.rlink[0]
                while i != 0:
                    if k.length[i] < bestlen:
                        bestlen = k.length[i]
                        best = i
                        if bestlen == 0:
                            break
                    i = k.rlink[i]
                i = best
                _cover(&k, i)
                xl = k.dlink[i]
                status = 2
                while True:
                    if xl != i:
                        nodes += 1
                        if budget >= 0 and nodes > budget:
                            status = OVER_BUDGET
                            break
                        p = xl + 1
                        while p != xl:
                            j = k.top[p]
                            if j <= 0:
                                p = k.ulink[p]
                            else:
                                _cover(&k, j)
                                p += 1
                        chosen[level] = xl
                        level += 1
                        break
                    _uncover(&k, i)
                    if level == 0:
                        status = EXHAUSTED
                        break
                    level -= 1
                    xl = chosen[level]
                    p = xl - 1
                    while p != xl:
                        j = k.top[p]
                        if j <= 0:
                            p = k.dlink[p]
                        else:
                            _uncover(&k, j)
                            p -= 1
                    i = k.top[xl]
                    xl = k.dlink[xl]
                if status != 2:
                    break
        if status == FOUND:
            for j in range(level):
                result.append(owner[chosen[j]])
    finally:
        free(k.top); free(k.ulink); free(k.dlink); free(k.llink)
        free(k.rlink); free(k.length); free(owner); free(chosen)
    return status, nodes, result
