"""Pure-Python kernels.

Same contract as the compiled ``_speedups`` module.  Every function takes and
returns C-contiguous ``numpy.intc`` arrays whose rows are image sequences
(0-based) of permutations.  Sorted tables are in lexicographic row order.
"""
from bisect import bisect_left

import numpy as np

from .errors import ElementCapExceeded

IMPLEMENTATION = "python"


def _rows(arr):
    return [tuple(r) for r in np.asarray(arr).tolist()]


def _table(rows, n):
    if not rows:
        return np.empty((0, n), dtype=np.intc)
    return np.ascontiguousarray(rows, dtype=np.intc)


def _conj(x, g):
    r = [0] * len(x)
    for i, xi in enumerate(x):
        r[g[i]] = g[xi]
    return tuple(r)


def closure(gens, cap):
    gens = np.asarray(gens)
    n = gens.shape[1]
    gl = _rows(gens)
    ident = tuple(range(n))
    seen = {ident}
    order = [ident]
    i = 0
    while i < len(order):
        e = order[i]
        i += 1
        for g in gl:
            h = tuple([g[k] for k in e])
            if h not in seen:
                seen.add(h)
                order.append(h)
                if len(order) > cap:
                    raise ElementCapExceeded(cap)
    return _table(order, n)


def find_row(table, x):
    rows = _rows(table)
    key = tuple(np.asarray(x).tolist())
    i = bisect_left(rows, key)
    if i < len(rows) and rows[i] == key:
        return i
    return -1


def first_conjugator_into(x, elems, target, start=0):
    xt = tuple(np.asarray(x).tolist())
    tset = set(_rows(target))
    for idx, g in enumerate(_rows(elems)[start:], start):
        if _conj(xt, g) in tset:
            return idx
    return -1


def commute_mask(elems, xs):
    xl = _rows(xs)
    out = np.zeros(len(elems), dtype=np.uint8)
    for idx, g in enumerate(_rows(elems)):
        if all(tuple([x[k] for k in g]) == tuple([g[k] for k in x]) for x in xl):
            out[idx] = 1
    return out


def normalize_mask(elems, hgens, hsorted):
    hl = _rows(hgens)
    hset = set(_rows(hsorted))
    out = np.zeros(len(elems), dtype=np.uint8)
    for idx, g in enumerate(_rows(elems)):
        if all(_conj(h, g) in hset for h in hl):
            out[idx] = 1
    return out


def conjugation_orbit(x, gens):
    gl = _rows(gens)
    x0 = tuple(np.asarray(x).tolist())
    seen = {x0}
    order = [x0]
    i = 0
    while i < len(order):
        y = order[i]
        i += 1
        for g in gl:
            z = _conj(y, g)
            if z not in seen:
                seen.add(z)
                order.append(z)
    return _table(order, len(x0))
