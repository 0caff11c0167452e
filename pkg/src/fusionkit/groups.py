"""Permutation groups with two interchangeable backends.

``"oracle"`` enumerates every element by closure and answers every query by
brute force.  ``"chain"`` uses a Schreier-Sims stabilizer chain for order,
membership and enumeration, and a base-image backtrack for centralizers.
Both backends expose elements in canonical (lexicographic image) order, so
witness searches are reproducible whatever the backend.
"""
from __future__ import annotations

import os
import threading

import numpy as np

from . import kernels
from .errors import (
    DegreeMismatch,
    ElementCapExceeded,
    FusionKitError,
    NotASubgroup,
    NotMember,
    NotPGroup,
)
from .perm import Permutation, commutator
from .schreier import StabilizerChain, centralizer_search

BACKENDS = ("oracle", "chain")
DEFAULT_ELEMENT_CAP = 10**6


def element_cap():
    """Current enumeration cap; ``FUSIONKIT_ELEMENT_CAP`` overrides the default."""
    raw = os.environ.get("FUSIONKIT_ELEMENT_CAP")
    if raw:
        return int(raw)
    return DEFAULT_ELEMENT_CAP


def is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_power(n, p):
    return p_part(n, p) == n


def _sorted_table(arr):
    if len(arr) == 0:
        return np.ascontiguousarray(arr, dtype=np.intc)
    idx = np.lexsort(arr.T[::-1])
    return np.ascontiguousarray(arr[idx], dtype=np.intc)


def _as_table(perms, degree):
    if not perms:
        return np.empty((0, degree), dtype=np.intc)
    return np.ascontiguousarray([p.images for p in perms], dtype=np.intc)


class PermGroup:
    """A permutation group given by generators.

    Immutable after construction.  Element table, order and stabilizer chain
    are computed lazily under a lock, so instances may be shared between
    threads.
    """

    def __init__(self, generators, backend="oracle", degree=None, cap=None,
                 _table=None):
        gens = list(generators)
        if not gens:
            if degree is None:
                raise FusionKitError("empty generator list needs an explicit degree")
            gens = [Permutation.identity(degree)]
        deg = gens[0].degree
        if degree is not None and degree != deg:
            raise DegreeMismatch(f"generator degree {deg} != group degree {degree}")
        for g in gens:
            if g.degree != deg:
                raise DegreeMismatch(f"generators of mixed degree: {deg} and {g.degree}")
        if backend not in BACKENDS:
            raise FusionKitError(f"unknown backend {backend!r}")
        self._degree = deg
        self._gens = tuple(gens)
        self._backend = backend
        self._cap = cap if cap is not None else element_cap()
        self._lock = threading.RLock()
        self._table = _table
        self._chain = None
        self._order = len(_table) if _table is not None else None
        self._elements = None
        self._set = None
        self._gen_table = _as_table(self._gens, deg)
        if backend == "oracle" and self._table is None:
            self._table_now()

    # -- basic attributes -------------------------------------------------
    @property
    def degree(self):
        return self._degree

    @property
    def generators(self):
        return self._gens

    @property
    def backend(self):
        return self._backend

    @property
    def cap(self):
        return self._cap

    def __repr__(self):
        gens = ", ".join(str(g) for g in self._gens)
        return f"<PermGroup degree={self._degree} gens=[{gens}] backend={self._backend}>"

    # -- lazy structures --------------------------------------------------
    def chain(self):
        with self._lock:
            if self._chain is None:
                self._chain = StabilizerChain([g.images for g in self._gens], self._degree)
            return self._chain

    def _table_now(self):
        with self._lock:
            if self._table is None:
                if self._backend == "oracle":
                    raw = kernels.closure(self._gen_table, self._cap)
                else:
                    if self.order() > self._cap:
                        raise ElementCapExceeded(self._cap)
                    raw = np.asarray(self.chain().elements(), dtype=np.intc)
                self._table = _sorted_table(raw)
                self._order = len(self._table)
            return self._table

    def table(self):
        """Canonically sorted ``(order, degree)`` array of 0-based images."""
        return self._table_now()

    def order(self):
        with self._lock:
            if self._order is None:
                if self._backend == "chain":
                    self._order = self.chain().order()
                else:
                    self._table_now()
            return self._order

    def __len__(self):
        return self.order()

    def elements(self):
        with self._lock:
            if self._elements is None:
                self._elements = [Permutation(r, check=False) for r in self.table().tolist()]
            return self._elements

    def __iter__(self):
        return iter(self.elements())

    def element_set(self):
        with self._lock:
            if self._set is None:
                self._set = frozenset(self.elements())
            return self._set

    def is_member(self, x):
        if x.degree != self._degree:
            raise DegreeMismatch(f"degree {x.degree} != group degree {self._degree}")
        if self._backend == "chain" and self._table is None:
            return self.chain().contains(x.images)
        return kernels.find_row(self.table(), np.asarray(x.images, dtype=np.intc)) >= 0

    def __contains__(self, x):
        return self.is_member(x)

    def contains_group(self, H):
        return H.degree == self._degree and all(self.is_member(g) for g in H.generators)

    def same_group(self, other):
        return (self._degree == other.degree and self.order() == other.order()
                and self.contains_group(other))

    def identity(self):
        return Permutation.identity(self._degree)

    def is_abelian(self):
        gens = [g for g in self._gens if not g.is_identity()]
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_p_group(self, p):
        return is_p_power(self.order(), p)


class Subgroup(PermGroup):
    """A group together with the group it was taken inside."""

    def __init__(self, parent, generators, _table=None):
        super().__init__(generators, backend=parent.backend, degree=parent.degree,
                         cap=parent.cap, _table=_table)
        self.parent = parent

    def __repr__(self):
        return f"<Subgroup order={self.order()} of parent order={self.parent.order()}>"


def _greedy_generators(table, degree, cap):
    """Canonical-order greedy generating set for the subgroup listed in ``table``."""
    gens = []
    span = {tuple(range(degree))}
    for row in table.tolist():
        t = tuple(row)
        if t in span:
            continue
        gens.append(Permutation(t, check=False))
        span = {tuple(r) for r in kernels.closure(_as_table(gens, degree), cap).tolist()}
        if len(span) == len(table):
            break
    return gens


def _subgroup_from_table(G, table):
    table = _sorted_table(np.asarray(table, dtype=np.intc).reshape(-1, G.degree))
    gens = _greedy_generators(table, G.degree, G.cap)
    return Subgroup(G, gens, _table=table)


def _require_members(G, elems):
    for x in elems:
        if not G.is_member(x):
            raise NotMember(f"{x} is not an element of the group")


def group_from_generators(gens, backend="oracle", cap=None, degree=None):
    """Build a group; raises on empty generators, mixed degree, or cap overflow."""
    gens = list(gens)
    if not gens and degree is None:
        raise FusionKitError("empty generator list")
    return PermGroup(gens, backend=backend, cap=cap, degree=degree)


def elements_of(G):
    if G.order() > G.cap:
        raise ElementCapExceeded(G.cap)
    return list(G.elements())


def is_member(G, x):
    return G.is_member(x)


def subgroup_generated(G, elems):
    elems = list(elems)
    _require_members(G, elems)
    gens = [x for x in elems if not x.is_identity()]
    if not gens:
        return Subgroup(G, [G.identity()])
    return Subgroup(G, gens)


def trivial_subgroup(G):
    return Subgroup(G, [G.identity()])


def centralizer(G, X):
    """``C_G(X)`` for a collection of permutations of G's degree."""
    X = list(X)
    for x in X:
        if x.degree != G.degree:
            raise DegreeMismatch(f"degree {x.degree} != group degree {G.degree}")
    X = [x for x in X if not x.is_identity()]
    if not X:
        return Subgroup(G, G.generators, _table=G.table() if G._table is not None else None)
    if G.backend == "chain":
        found = centralizer_search([g.images for g in G.generators], G.degree,
                                   [x.images for x in X])
        rows = np.asarray(found, dtype=np.intc).reshape(-1, G.degree)
        return _subgroup_from_table(G, rows)
    T = G.table()
    mask = kernels.commute_mask(T, _as_table(X, G.degree))
    return _subgroup_from_table(G, T[mask.astype(bool)])


def center(G):
    return centralizer(G, G.generators)


def normalizer(G, H):
    """``N_G(H)``; raises NotASubgroup unless H <= G."""
    if not G.contains_group(H):
        raise NotASubgroup("H is not contained in G")
    T = G.table()
    hgens = [h for h in H.generators if not h.is_identity()]
    if not hgens:
        return Subgroup(G, G.generators, _table=T)
    if G.backend == "chain":
        # chain route: test each enumerated g by sifting conjugated generators through H's chain
        hc = (H if H.backend == "chain" else PermGroup(H.generators, backend="chain")).chain()
        keep = []
        for row in T.tolist():
            g = Permutation(row, check=False)
            gi = g.inverse()
            if all(hc.contains((gi * h * g).images) for h in hgens):
                keep.append(row)
        return _subgroup_from_table(G, np.asarray(keep, dtype=np.intc))
    mask = kernels.normalize_mask(T, _as_table(hgens, G.degree), H.table())
    return _subgroup_from_table(G, T[mask.astype(bool)])


def index(G, H):
    if not G.contains_group(H):
        raise NotASubgroup("H is not a subgroup of G")
    q, r = divmod(G.order(), H.order())
    if r:
        raise NotASubgroup("order of H does not divide order of G")
    return q


def derived_subgroup(H):
    gens = list(H.generators)
    comms = {commutator(a, b) for a in gens for b in gens}
    comms.discard(H.identity())
    if not comms:
        return trivial_subgroup(H)
    # [H,H] is the normal closure of the generator commutators
    K = Subgroup(H, sorted(comms))
    while True:
        extra = []
        for k in K.generators:
            for g in gens:
                c = g.inverse() * k * g
                if not K.is_member(c):
                    extra.append(c)
        if not extra:
            return K
        K = Subgroup(H, list(K.generators) + extra)


def omega1(P, p):
    """Subgroup generated by the elements of order dividing p (P must be a p-group)."""
    if not P.is_p_group(p):
        raise NotPGroup(f"group of order {P.order()} is not a {p}-group")
    elems = [x for x in P.elements() if x.order == p]
    if not elems:
        return trivial_subgroup(P)
    return Subgroup(P, elems)


NONABELIAN = "nonabelian"
ABELIAN = "abelian"
ELEMENTARY_ABELIAN = "elementary-abelian"


def classify_commutativity(H, p):
    if not H.is_abelian():
        return NONABELIAN
    if all(p % g.order == 0 for g in H.generators):
        return ELEMENTARY_ABELIAN
    return ABELIAN


def _p_element(x, p):
    return is_p_power(x.order, p)


def sylow(G, p):
    """A Sylow p-subgroup via deterministic greedy ascent.

    Starting from the trivial group, repeatedly adjoin the first element (in
    canonical order) of ``N_G(P) - P`` whose order is a power of p.
    """
    if not is_prime(p):
        raise FusionKitError(f"{p} is not prime")
    target = p_part(G.order(), p)
    P = trivial_subgroup(G)
    while P.order() < target:
        N = normalizer(G, P)
        g = next(x for x in N.elements() if _p_element(x, p) and not P.is_member(x))
        P = Subgroup(G, [h for h in P.generators if not h.is_identity()] + [g])
    return P


def are_conjugate(G, x, y):
    """First g in canonical order with ``x^g = y``, or None."""
    _require_members(G, [x, y])
    if x.order != y.order:
        return None
    T = G.table()
    i = kernels.first_conjugator_into(np.asarray(x.images, dtype=np.intc), T,
                                      np.asarray([y.images], dtype=np.intc))
    return None if i < 0 else Permutation(T[i].tolist(), check=False)


def exists_conjugate_into(G, x, T):
    """First g in canonical order with ``x^g`` in the subgroup T, or None."""
    _require_members(G, [x])
    if not G.contains_group(T):
        raise NotASubgroup("target is not a subgroup of G")
    return first_conjugator_into_set(G, x, T.table())


def first_conjugator_into_set(G, x, target_table, start=0):
    """First g (canonical order) with ``x^g`` a row of the sorted ``target_table``."""
    T = G.table()
    i = kernels.first_conjugator_into(np.asarray(x.images, dtype=np.intc), T,
                                      target_table, start)
    return None if i < 0 else Permutation(T[i].tolist(), check=False)


def complex_product(A, B):
    """The set ``{ab : a in A, b in B}``."""
    pa = getattr(A, "parent", None)
    pb = getattr(B, "parent", None)
    if pa is None or pb is None or not (pa is pb or pa.same_group(pb)):
        raise NotASubgroup("complex product needs subgroups of a common parent")
    return {a * b for a in A.elements() for b in B.elements()}


def intersection(A, B):
    """Subgroup ``A & B`` inside A's parent (A, B share a parent)."""
    rows = [x.images for x in A.elements() if B.is_member(x)]
    parent = getattr(A, "parent", A)
    return _subgroup_from_table(parent, np.asarray(rows, dtype=np.intc))


def conjugacy_class(G, x):
    """The G-class of x, canonically sorted."""
    orb = kernels.conjugation_orbit(np.asarray(x.images, dtype=np.intc), G._gen_table)
    return [Permutation(r, check=False) for r in _sorted_table(orb).tolist()]


def subgroup_from_elements(G, elems):
    return _subgroup_from_table(G, _as_table(list(elems), G.degree))
