"""Compiled and pure-Python kernels must agree exactly."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusionkit import _fallback, kernels
from fusionkit.errors import ElementCapExceeded

speedups = pytest.importorskip("fusionkit._speedups")

IMPLS = [_fallback, speedups]


def table(rows):
    return np.ascontiguousarray(rows, dtype=np.intc)


def sort_rows(a):
    return a[np.lexsort(a.T[::-1])]


perm5 = st.permutations(list(range(5)))


def test_selected_implementation():
    assert kernels.IMPLEMENTATION in ("cython", "python")


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPLEMENTATION)
def test_closure_s4(impl):
    out = impl.closure(table([[1, 2, 3, 0], [1, 0, 2, 3]]), 100)
    assert out.shape == (24, 4)
    assert out[0].tolist() == [0, 1, 2, 3]


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPLEMENTATION)
def test_closure_cap(impl):
    with pytest.raises(ElementCapExceeded):
        impl.closure(table([[1, 2, 3, 0], [1, 0, 2, 3]]), 10)


@settings(max_examples=40, deadline=None)
@given(st.lists(perm5, min_size=1, max_size=3))
def test_closure_parity(gens):
    a = sort_rows(_fallback.closure(table(gens), 1000))
    b = sort_rows(speedups.closure(table(gens), 1000))
    assert np.array_equal(a, b)


@settings(max_examples=40, deadline=None)
@given(st.lists(perm5, min_size=1, max_size=3), perm5, st.lists(perm5, min_size=1, max_size=6))
def test_scan_parity(gens, x, tgt):
    elems = sort_rows(_fallback.closure(table(gens), 1000))
    target = sort_rows(np.unique(table(tgt), axis=0))
    xs = table([x])
    assert (_fallback.first_conjugator_into(table(x), elems, target)
            == speedups.first_conjugator_into(table(x), elems, target))
    assert np.array_equal(_fallback.commute_mask(elems, xs), speedups.commute_mask(elems, xs))
    assert np.array_equal(_fallback.normalize_mask(elems, xs, target),
                          speedups.normalize_mask(elems, xs, target))
    assert _fallback.find_row(target, table(x)) == speedups.find_row(target, table(x))
    assert np.array_equal(sort_rows(_fallback.conjugation_orbit(table(x), table(gens))),
                          sort_rows(speedups.conjugation_orbit(table(x), table(gens))))


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPLEMENTATION)
def test_first_conjugator_start_offset(impl):
    elems = sort_rows(impl.closure(table([[1, 2, 0]]), 10))
    target = table([[1, 2, 0]])
    x = table([1, 2, 0])
    assert impl.first_conjugator_into(x, elems, target) == 0
    assert impl.first_conjugator_into(x, elems, target, 1) == 1
    assert impl.first_conjugator_into(x, elems, table([[2, 0, 1]])) == -1
