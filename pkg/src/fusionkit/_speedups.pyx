# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_fallback`` for the contract."""
import numpy as np
cimport cython
from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING
from libc.stdlib cimport malloc, free

from .errors import ElementCapExceeded

IMPLEMENTATION = "cython"


cdef inline int _cmp_row(const int[:, ::1] t, Py_ssize_t i, const int* key, Py_ssize_t n) nogil:
    cdef Py_ssize_t k
    for k in range(n):
        if t[i, k] != key[k]:
            return -1 if t[i, k] < key[k] else 1
    return 0


cdef inline Py_ssize_t _search(const int[:, ::1] t, const int* key, Py_ssize_t n) nogil:
    cdef Py_ssize_t lo = 0, hi = t.shape[0], mid
    cdef int c
    while lo < hi:
        mid = (lo + hi) // 2
        c = _cmp_row(t, mid, key, n)
        if c == 0:
            return mid
        if c < 0:
            lo = mid + 1
        else:
            hi = mid
    return -1


def closure(gens_in, Py_ssize_t cap):
    cdef const int[:, ::1] gens = np.ascontiguousarray(gens_in, dtype=np.intc)
    cdef Py_ssize_t k = gens.shape[0], n = gens.shape[1]
    cdef Py_ssize_t i, j, q
    cdef const int* e
    cdef int* buf = <int*> malloc(n * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    seen = set()
    order = []
    try:
        for q in range(n):
            buf[q] = <int> q
        b = PyBytes_FromStringAndSize(<char*> buf, n * sizeof(int))
        seen.add(b)
        order.append(b)
        i = 0
        while i < len(order):
            e = <const int*> PyBytes_AS_STRING(order[i])
            i += 1
            for j in range(k):
                for q in range(n):
                    buf[q] = gens[j, e[q]]
                b = PyBytes_FromStringAndSize(<char*> buf, n * sizeof(int))
                if b not in seen:
                    seen.add(b)
                    order.append(b)
                    if len(order) > cap:
                        raise ElementCapExceeded(cap)
    finally:
        free(buf)
    return np.frombuffer(b"".join(order), dtype=np.intc).reshape(len(order), n).copy()


def find_row(table_in, x_in):
    cdef const int[:, ::1] t = np.ascontiguousarray(table_in, dtype=np.intc)
    cdef const int[::1] x = np.ascontiguousarray(x_in, dtype=np.intc)
    if t.shape[0] == 0:
        return -1
    return _search(t, &x[0], x.shape[0])


def first_conjugator_into(x_in, elems_in, target_in, Py_ssize_t start=0):
    cdef const int[::1] x = np.ascontiguousarray(x_in, dtype=np.intc)
    cdef const int[:, ::1] g = np.ascontiguousarray(elems_in, dtype=np.intc)
    cdef const int[:, ::1] t = np.ascontiguousarray(target_in, dtype=np.intc)
    cdef Py_ssize_t n = x.shape[0], m = g.shape[0], i, q
    cdef Py_ssize_t found = -1
    if t.shape[0] == 0:
        return -1
    cdef int* buf = <int*> malloc(n * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    with nogil:
        for i in range(start, m):
            for q in range(n):
                buf[g[i, q]] = g[i, x[q]]
            if _search(t, buf, n) >= 0:
                found = i
                break
    free(buf)
    return found


def commute_mask(elems_in, xs_in):
    cdef const int[:, ::1] g = np.ascontiguousarray(elems_in, dtype=np.intc)
    cdef const int[:, ::1] xs = np.ascontiguousarray(xs_in, dtype=np.intc)
    cdef Py_ssize_t m = g.shape[0], n = g.shape[1], k = xs.shape[0], i, j, q
    out = np.ones(m, dtype=np.uint8)
    cdef unsigned char[::1] o = out
    with nogil:
        for i in range(m):
            for j in range(k):
                for q in range(n):
                    if xs[j, g[i, q]] != g[i, xs[j, q]]:
                        o[i] = 0
                        break
                if o[i] == 0:
                    break
    return out


def normalize_mask(elems_in, hgens_in, hsorted_in):
    cdef const int[:, ::1] g = np.ascontiguousarray(elems_in, dtype=np.intc)
    cdef const int[:, ::1] h = np.ascontiguousarray(hgens_in, dtype=np.intc)
    cdef const int[:, ::1] t = np.ascontiguousarray(hsorted_in, dtype=np.intc)
    cdef Py_ssize_t m = g.shape[0], n = g.shape[1], k = h.shape[0], i, j, q
    out = np.ones(m, dtype=np.uint8)
    cdef unsigned char[::1] o = out
    cdef int* buf = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    with nogil:
        for i in range(m):
            for j in range(k):
                for q in range(n):
                    buf[g[i, q]] = g[i, h[j, q]]
                if _search(t, buf, n) < 0:
                    o[i] = 0
                    break
    free(buf)
    return out


def conjugation_orbit(x_in, gens_in):
    cdef const int[::1] x = np.ascontiguousarray(x_in, dtype=np.intc)
    cdef const int[:, ::1] gens = np.ascontiguousarray(gens_in, dtype=np.intc)
    cdef Py_ssize_t n = x.shape[0], k = gens.shape[0], i, j, q
    cdef const int* y
    cdef int* buf = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    b = PyBytes_FromStringAndSize(<char*> &x[0], n * sizeof(int))
    seen = {b}
    order = [b]
    try:
        i = 0
        while i < len(order):
            y = <const int*> PyBytes_AS_STRING(order[i])
            i += 1
            for j in range(k):
                for q in range(n):
                    buf[gens[j, q]] = gens[j, y[q]]
                b = PyBytes_FromStringAndSize(<char*> buf, n * sizeof(int))
                if b not in seen:
                    seen.add(b)
                    order.append(b)
    finally:
        free(buf)
    return np.frombuffer(b"".join(order), dtype=np.intc).reshape(len(order), n).copy()
