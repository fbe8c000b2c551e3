"""Compiled Felsch-style coset enumeration for groups generated by involutions.

Every generator is an involution, so the table has one column per generator
and an entry a.x = b always comes with b.x = a.  Cosets are int32 indices;
coset 0 is the base point.  Words are flattened into one int32 array of
0-based generator indices addressed by (start, length) pairs.
"""

import numpy as np
from numba import njit

OK = 0
LIMIT = 1


@njit(cache=True)
def _rep(p, a):
    r = a
    while p[r] != r:
        r = p[r]
    while p[a] != r:
        nxt = p[a]
        p[a] = r
        a = nxt
    return r


@njit(cache=True)
def _merge(p, queue, qlen, a, b):
    ra = _rep(p, a)
    rb = _rep(p, b)
    if ra != rb:
        lo = min(ra, rb)
        hi = max(ra, rb)
        p[hi] = lo
        queue[qlen[0]] = hi
        qlen[0] += 1


@njit(cache=True)
def _push(stack, state, c, x):
    sp = state[0]
    if sp >= stack.shape[0]:
        state[1] = 1
        return
    stack[sp, 0] = c
    stack[sp, 1] = x
    state[0] = sp + 1


@njit(cache=True)
def _coincidence(table, p, m, a, b, queue, stack, state):
    qlen = np.zeros(1, np.int64)
    _merge(p, queue, qlen, a, b)
    i = 0
    while i < qlen[0]:
        g = queue[i]
        i += 1
        for x in range(m):
            d = table[g, x]
            if d < 0:
                continue
            if table[d, x] == g:
                table[d, x] = -1
            mu = _rep(p, g)
            nu = _rep(p, d)
            if table[mu, x] >= 0:
                _merge(p, queue, qlen, nu, table[mu, x])
            elif table[nu, x] >= 0:
                _merge(p, queue, qlen, mu, table[nu, x])
            else:
                table[mu, x] = nu
                table[nu, x] = mu
                _push(stack, state, mu, x)


@njit(cache=True)
def _scan(table, p, m, words, start, length, alpha, queue, stack, state):
    f = alpha
    i = start
    j = start + length - 1
    while i <= j and table[f, words[i]] >= 0:
        f = table[f, words[i]]
        i += 1
    if i > j:
        if f != alpha:
            _coincidence(table, p, m, f, alpha, queue, stack, state)
        return
    b = alpha
    while j >= i and table[b, words[j]] >= 0:
        b = table[b, words[j]]
        j -= 1
    if j < i:
        _coincidence(table, p, m, f, b, queue, stack, state)
    elif i == j:
        x = words[i]
        table[f, x] = b
        table[b, x] = f
        _push(stack, state, f, x)


@njit(cache=True)
def _process(table, p, m, words, cstart, clen, gstart, gend, rstart, rlen,
             nfree, queue, stack, state):
    while True:
        while state[0] > 0:
            state[0] -= 1
            a = stack[state[0], 0]
            x = stack[state[0], 1]
            if p[a] != a:
                continue
            for t in range(gstart[x], gend[x]):
                _scan(table, p, m, words, cstart[t], clen[t], a, queue, stack, state)
                if p[a] != a:
                    break
            if p[a] != a:
                continue
            b = table[a, x]
            if b >= 0 and p[b] == b:
                for t in range(gstart[x], gend[x]):
                    _scan(table, p, m, words, cstart[t], clen[t], b, queue, stack, state)
                    if p[b] != b:
                        break
        if state[1] == 0:
            return
        # stack overflowed: forget it and rescan every relator at every coset
        state[1] = 0
        for a in range(nfree):
            for r in range(rstart.shape[0]):
                if p[a] != a:
                    break
                _scan(table, p, m, words, rstart[r], rlen[r], a, queue, stack, state)


@njit(cache=True)
def felsch(m, words, cstart, clen, gstart, gend, rstart, rlen, cap, stack_size):
    """Enumerate cosets of the trivial subgroup.

    Returns (status, table, p, nfree); status LIMIT means more than ``cap``
    cosets were needed.
    """
    table = np.full((cap, m), -1, np.int32)
    p = np.arange(cap).astype(np.int32)
    queue = np.empty(cap, np.int32)
    stack = np.empty((stack_size, 2), np.int32)
    state = np.zeros(2, np.int64)
    nfree = 1
    alpha = 0
    while alpha < nfree:
        if p[alpha] == alpha:
            for x in range(m):
                if p[alpha] != alpha:
                    break
                if table[alpha, x] < 0:
                    if nfree >= cap:
                        return LIMIT, table, p, nfree
                    beta = nfree
                    nfree += 1
                    table[alpha, x] = beta
                    table[beta, x] = alpha
                    _push(stack, state, alpha, x)
                    _process(table, p, m, words, cstart, clen, gstart, gend,
                             rstart, rlen, nfree, queue, stack, state)
        alpha += 1
    return OK, table, p, nfree


@njit(cache=True)
def closed_under(table, words, rstart, rlen):
    """Index of the first relator that fails to act trivially on some coset, or -1."""
    n = table.shape[0]
    for r in range(rstart.shape[0]):
        s = rstart[r]
        e = s + rlen[r]
        for a in range(n):
            c = a
            for t in range(s, e):
                c = table[c, words[t]]
            if c != a:
                return r
    return -1
