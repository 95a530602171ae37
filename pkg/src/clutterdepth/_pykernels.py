"""Pure-Python kernels.  ``_ckernels.pyx`` mirrors these line for line."""
from math import comb

FOUND = 1
EXHAUSTED = 0
OVER_BUDGET = -1


def _popcount(x):
    return bin(x).count("1")


def _counts_feasible(uncov, d, binom):
    """Necessary condition on uncovered counts per rank for tops at rank ``d``.

    Uncovered elements of rank ``i < d`` are either inside an interval started
    lower down or start one themselves; an interval started at rank ``l``
    holds ``C(d - l, i - l)`` elements of rank ``i``.
    """
    starts = [0] * (d + 1)
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


def interval_search(member, n, d, order, cand_off, cand, budget):
    """Depth-first exact cover of the ranks below ``d`` by intervals topped at rank ``d``.

    ``member[s]`` flags poset elements.  ``order`` lists the elements of rank
    ``< d`` in visiting order; the candidate tops for ``order[p]`` are
    ``cand[cand_off[p]:cand_off[p + 1]]``.  Returns ``(status, nodes, intervals)``.
    """
    size = 1 << n
    covered = bytearray(size)
    binom = [[comb(a, b) for b in range(n + 1)] for a in range(n + 1)]
    uncov = [0] * (d + 1)
    for s in range(size):
        if member[s]:
            r = _popcount(s)
            if r <= d:
                uncov[r] += 1
    m = len(order)
    if m == 0:
        return FOUND, 0, []
    if not _counts_feasible(uncov, d, binom):
        return EXHAUSTED, 0, []

    stack_p = [0] * m
    stack_c = [0] * m
    depth = 0
    nodes = 0
    p = 0
    ci = -1
    while True:
        if ci < 0:
            while p < m and covered[order[p]]:
                p += 1
            if p == m:
                return FOUND, nodes, [(order[stack_p[k]], cand[stack_c[k]]) for k in range(depth)]
            ci = cand_off[p]
        sigma = order[p]
        placed = False
        end = cand_off[p + 1]
        while ci < end:
            top = cand[ci]
            diff = top ^ sigma
            t = diff
            free = True
            while True:
                if covered[sigma | t]:
                    free = False
                    break
                if t == 0:
                    break
                t = (t - 1) & diff
            if free:
                nodes += 1
                if 0 <= budget < nodes:
                    return OVER_BUDGET, nodes, []
                t = diff
                while True:
                    e = sigma | t
                    covered[e] = 1
                    uncov[_popcount(e)] -= 1
                    if t == 0:
                        break
                    t = (t - 1) & diff
                if _counts_feasible(uncov, d, binom):
                    stack_p[depth] = p
                    stack_c[depth] = ci
                    depth += 1
                    placed = True
                    break
                _release(covered, uncov, sigma, diff)
            ci += 1
        if placed:
            p += 1
            ci = -1
            continue
        if depth == 0:
            return EXHAUSTED, nodes, []
        depth -= 1
        p = stack_p[depth]
        ci = stack_c[depth]
        sigma = order[p]
        _release(covered, uncov, sigma, cand[ci] ^ sigma)
        ci += 1


def _release(covered, uncov, sigma, diff):
    t = diff
    while True:
        e = sigma | t
        covered[e] = 0
        uncov[_popcount(e)] += 1
        if t == 0:
            break
        t = (t - 1) & diff


def rank_mod_p(rows, ncols, p):
    """Rank of an integer matrix over GF(p); ``rows`` is a list of int lists."""
    mat = [[x % p for x in r] for r in rows]
    rank = 0
    nrows = len(mat)
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if mat[r][col]:
                piv = r
                break
        if piv < 0:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        inv = pow(prow[col], p - 2, p)
        for c in range(col, ncols):
            prow[c] = prow[c] * inv % p
        for r in range(nrows):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                row = mat[r]
                for c in range(col, ncols):
                    if prow[c]:
                        row[c] = (row[c] - f * prow[c]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def local_counts_feasible(member, n, d):
    """The rank-count condition on every lower interval ``[0, T]`` and upper interval ``[S, [n]]``.

    A partition with tops of rank ``>= d`` restricts to a partition of the
    poset's part inside ``[S, T]`` whose tops have relative rank at least
    ``d - (n - |T|) - |S|``, so each restriction must pass the count test.
    """
    binom = [[comb(a, b) for b in range(n + 1)] for a in range(n + 1)]
    full = (1 << n) - 1
    for X in range(full + 1):
        target = d - (n - _popcount(X))
        if target <= 0:
            continue
        # X is the top of a lower interval, or the complement of an upper interval's bottom
        for base in (0, full & ~X):
            counts = [0] * (target + 1)
            t = X
            while True:
                r = _popcount(t)
                if r <= target and member[base | t]:
                    counts[r] += 1
                if t == 0:
                    break
                t = (t - 1) & X
            if not _counts_feasible(counts, target, binom):
                return False
    return True


def exact_cover(nprimary, nitems, opt_off, opt_items, budget):
    """Dancing-links exact cover (primary items ``1..nprimary``, secondary up to ``nitems``).

    Option ``k`` holds items ``opt_items[opt_off[k]:opt_off[k + 1]]``.  The
    item to branch on is the primary item with fewest live options, the first
    such in item order.  Returns ``(status, nodes, chosen option indices)``.
    """
    nopt = len(opt_off) - 1
    total = nitems + 2 + len(opt_items) + nopt
    top = [0] * total
    ulink = [0] * total
    dlink = [0] * total
    llink = [0] * (nitems + 2)
    rlink = [0] * (nitems + 2)
    length = [0] * (nitems + 1)
    owner = [0] * total
    for i in range(nitems + 1):
        ulink[i] = dlink[i] = i
    for i in range(1, nprimary + 1):
        llink[i] = i - 1
        rlink[i - 1] = i
    llink[0] = nprimary
    rlink[nprimary] = 0
    for i in range(nprimary + 1, nitems + 1):
        llink[i] = rlink[i] = i
    x = nitems + 1  # first spacer
    top[x] = 0
    spacer = x
    for k in range(nopt):
        first = x + 1
        for q in range(opt_off[k], opt_off[k + 1]):
            x += 1
            it = opt_items[q]
            top[x] = it
            owner[x] = k
            u = ulink[it]
            ulink[x] = u
            dlink[u] = x
            dlink[x] = it
            ulink[it] = x
            length[it] += 1
        dlink[spacer] = x
        x += 1
        top[x] = -(k + 1)
        ulink[x] = first
        spacer = x

    def hide(p):
        q = p + 1
        while q != p:
            it = top[q]
            if it <= 0:
                q = ulink[q]
            else:
                u = ulink[q]
                d = dlink[q]
                dlink[u] = d
                ulink[d] = u
                length[it] -= 1
                q += 1

    def unhide(p):
        q = p - 1
        while q != p:
            it = top[q]
            if it <= 0:
                q = dlink[q]
            else:
                u = ulink[q]
                d = dlink[q]
                dlink[u] = q
                ulink[d] = q
                length[it] += 1
                q -= 1

    def cover(i):
        p = dlink[i]
        while p != i:
            hide(p)
            p = dlink[p]
        left = llink[i]
        right = rlink[i]
        rlink[left] = right
        llink[right] = left

    def uncover(i):
        left = llink[i]
        right = rlink[i]
        rlink[left] = i
        llink[right] = i
        p = ulink[i]
        while p != i:
            unhide(p)
            p = ulink[p]

    def commit(xl):
        p = xl + 1
        while p != xl:
            j = top[p]
            if j <= 0:
                p = ulink[p]
            else:
                cover(j)
                p += 1

    def uncommit(xl):
        p = xl - 1
        while p != xl:
            j = top[p]
            if j <= 0:
                p = dlink[p]
            else:
                uncover(j)
                p -= 1

    chosen = [0] * (nprimary + 1)
    level = 0
    nodes = 0
    while True:
        # choose an item, or report success
        if rlink[0] == 0:
            return FOUND, nodes, [owner[chosen[k]] for k in range(level)]
        best = -1
        bestlen = total
        i = rlink[0]
        while i != 0:
            if length[i] < bestlen:
                bestlen = length[i]
                best = i
                if bestlen == 0:
                    break
            i = rlink[i]
        i = best
        cover(i)
        xl = dlink[i]
        while True:
            if xl != i:
                nodes += 1
                if 0 <= budget < nodes:
                    return OVER_BUDGET, nodes, []
                commit(xl)
                chosen[level] = xl
                level += 1
                break
            # no option left for item i: backtrack
            uncover(i)
            if level == 0:
                return EXHAUSTED, nodes, []
            level -= 1
            xl = chosen[level]
            uncommit(xl)
            i = top[xl]
            xl = dlink[xl]
