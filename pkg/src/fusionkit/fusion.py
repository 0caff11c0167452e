"""Fusion predicates for the group fusion system F_S(G).

Nothing here builds morphism sets.  A morphism ``c_g: P -> Q`` of F_S(G)
exists exactly when ``P^g <= Q``, so every predicate becomes a search for a
conjugating element of G, scanned in canonical element order (first hit
wins).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import FusionKitError, NotASubgroup, NotStronglyClosed
from .groups import (
    ELEMENTARY_ABELIAN,
    NONABELIAN,
    _as_table,
    _sorted_table,
    are_conjugate,
    center,
    centralizer,
    classify_commutativity,
    complex_product,
    conjugacy_class,
    first_conjugator_into_set,
    index,
    is_p_power,
    is_prime,
    normalizer,
    omega1,
    p_part,
    subgroup_from_elements,
    subgroup_generated,
    sylow,
)
from .perm import conjugate_element

DEFAULT_SUBGROUP_CAP = 16


@dataclass(frozen=True)
class FusionWitness:
    """``source^conjugator = image``, with image inside ``target``."""

    source: object
    conjugator: object
    image: object
    target: object

    def is_valid(self):
        return (conjugate_element(self.source, self.conjugator) == self.image
                and self.target.is_member(self.image))


@dataclass
class Verdict:
    holds: bool
    failures: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


class GroupFusionSystem:
    """The triple (G, S, p) realizing F_S(G).

    S defaults to the canonical Sylow p-subgroup.  Z(S) and Omega_1(S) are
    computed at construction so the object is read-only afterwards.
    """

    def __init__(self, G, p=2, S=None):
        if not is_prime(p):
            raise FusionKitError(f"{p} is not prime")
        if S is None:
            S = sylow(G, p)
        elif not G.contains_group(S) or S.order() != p_part(G.order(), p):
            raise FusionKitError("S is not a Sylow subgroup of G")
        self.G = G
        self.S = S
        self.p = p
        self.Z = center(S)
        self.U = omega1(S, p)

    @property
    def mode(self):
        return "theorem" if self.p == 2 else "exploratory"

    def __repr__(self):
        return f"<GroupFusionSystem |G|={self.G.order()} |S|={self.S.order()} p={self.p}>"


def _witness(x, g, target):
    return FusionWitness(x, g, conjugate_element(x, g), target)


def hypothesis_H(F):
    """Every x in S is G-conjugate into Z(S)."""
    zt = F.Z.table()
    v = Verdict(True)
    for x in F.S.elements():
        g = first_conjugator_into_set(F.G, x, zt)
        if g is None:
            v.failures.append(x)
        else:
            v.witnesses.append(_witness(x, g, F.Z))
    v.holds = not v.failures
    return v


def camina_herzog(G, p):
    """Every p-element x of G has ``|G : C_G(x)|`` prime to p.

    Failures are ``(element, index)`` pairs in canonical element order.
    The index is computed from the centralizer of one representative per
    conjugacy class and cross-checked against the class length.
    """
    if not is_prime(p):
        raise FusionKitError(f"{p} is not prime")
    n = G.order()
    done = {}
    failures = []
    sizes = {}
    for x in G.elements():
        if x in done or not is_p_power(x.order, p):
            continue
        cls = conjugacy_class(G, x)
        idx = index(G, centralizer(G, [x]))
        if idx != len(cls):
            raise AssertionError(f"class length {len(cls)} != centralizer index {idx}")
        for y in cls:
            done[y] = idx
        sizes[str(x)] = idx
    for x in G.elements():
        idx = done.get(x)
        if idx is not None and idx % p == 0:
            failures.append((x, idx))
    return Verdict(not failures, failures, info={"class_indices": sizes, "order": n})


def is_strongly_closed(F, U):
    """No conjugate of an element of U lands in S outside U.

    Failures are FusionWitness records ``u^g`` with target S.
    """
    if not F.S.contains_group(U):
        raise NotASubgroup("U is not contained in S")
    outside = [x for x in F.S.elements() if not U.is_member(x)]
    v = Verdict(True)
    if not outside:
        return v
    table = _sorted_table(_as_table(outside, F.S.degree))
    for u in U.elements():
        g = first_conjugator_into_set(F.G, u, table)
        if g is not None:
            v.failures.append(_witness(u, g, F.S))
    v.holds = not v.failures
    return v


def step1_normalizer_equals_centralizer(F):
    """``N_S(<x>) = C_S(x)`` for all x in S; failures carry both orders."""
    v = Verdict(True)
    for x in F.S.elements():
        cyc = subgroup_generated(F.S, [x])
        N = normalizer(F.S, cyc)
        C = centralizer(F.S, [x])
        if not N.contains_group(C):
            raise AssertionError(f"C_S({x}) is not inside N_S(<{x}>)")
        if N.order() != C.order():
            v.failures.append((x, N.order(), C.order()))
    v.holds = not v.failures
    return v


def extension_axiom_witness(F, x):
    """First g with ``x^g`` in Z(S) and ``N_S(<x>)^g <= S``, or None."""
    N = normalizer(F.S, subgroup_generated(F.S, [x]))
    ngens = [h for h in N.generators if not h.is_identity()]
    zt = F.Z.table()
    G = F.G
    order = G.elements()
    pos = 0
    while True:
        g = first_conjugator_into_set(G, x, zt, start=pos)
        if g is None:
            return None
        if all(F.S.is_member(conjugate_element(h, g)) for h in ngens):
            return _witness(x, g, F.Z)
        pos = _position(G, g) + 1
        if pos >= len(order):
            return None


def _position(G, g):
    return kernels.find_row(G.table(), np.asarray(g.images, dtype=np.intc))


def extension_witness_total(F):
    v = Verdict(True)
    for x in F.S.elements():
        w = extension_axiom_witness(F, x)
        if w is None:
            v.failures.append(x)
        else:
            v.witnesses.append(w)
    v.holds = not v.failures
    return v


def step2_omega1_elementary(F):
    """Omega_1(S) is elementary abelian; a failure is a noncommuting pair."""
    cls = classify_commutativity(F.U, F.p)
    v = Verdict(cls == ELEMENTARY_ABELIAN, info={"classification": cls,
                                                 "omega1_order": F.U.order()})
    if cls == NONABELIAN:
        gens = [g for g in F.U.generators if not g.is_identity()]
        pair = next((a, b) for a in gens for b in gens if a * b != b * a)
        v.failures.append(pair)
    return v


def star_condition(F):
    """Every x in S is G-conjugate into the complex product Z(S) Omega_1(S).

    Raises NotStronglyClosed when Omega_1(S) is not strongly closed.
    """
    sc = is_strongly_closed(F, F.U)
    if not sc.holds:
        raise NotStronglyClosed("Omega_1(S) is not strongly closed; quotient undefined")
    ZU = subgroup_from_elements(F.S, sorted(complex_product(F.Z, F.U)))
    zt = ZU.table()
    v = Verdict(True, info={"ZU_order": ZU.order()})
    for x in F.S.elements():
        g = first_conjugator_into_set(F.G, x, zt)
        if g is None:
            v.failures.append(x)
        else:
            v.witnesses.append(_witness(x, g, ZU))
    v.holds = not v.failures
    return v


def center_product_decomposition(F):
    """``S = Z(S) Omega_1(S)`` as sets."""
    prod = complex_product(F.Z, F.U)
    v = Verdict(len(prod) == F.S.order(),
                info={"Z_order": F.Z.order(), "omega1_order": F.U.order(),
                      "product_size": len(prod)})
    if not v.holds:
        v.failures = [x for x in F.S.elements() if x not in prod]
    return v


def omega1_in_center(F):
    """Every element of order p in S is central in S; failures are (u, s) pairs."""
    v = Verdict(True)
    for u in F.S.elements():
        if u.order != F.p:
            continue
        s = next((s for s in F.S.generators if u * s != s * u), None)
        if s is not None:
            v.failures.append((u, s))
    v.holds = not v.failures
    return v


def _subgroups_up_to(S, cap):
    """All subgroups of S of order <= cap, as Subgroups of S (canonical order)."""
    found = {}

    def add(H):
        key = H.table().tobytes()
        if key not in found:
            found[key] = H
            return True
        return False

    cyclic = []
    for x in S.elements():
        H = subgroup_generated(S, [x])
        if H.order() <= cap and add(H):
            cyclic.append(H)
    frontier = list(found.values())
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic:
                if H.contains_group(C):
                    continue
                J = subgroup_generated(S, list(H.generators) + list(C.generators))
                if J.order() <= cap and add(J):
                    nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=lambda H: (H.order(), H.table().tobytes()))


def controls_fusion(F, N, subgroup_order_cap=DEFAULT_SUBGROUP_CAP):
    """N realizes all G-conjugation among elements of S and among subgroups of S.

    Element level: ``a ~_G b`` implies ``a ~_N b`` for a, b in S.  Subgroup
    level: for each P <= S with ``|P| <= subgroup_order_cap`` and each g with
    ``P^g <= S``, some n in N agrees with g on P.
    """
    G, S = F.G, F.S
    if not G.contains_group(N):
        raise NotASubgroup("N is not a subgroup of G")
    sset = S.element_set()
    v = Verdict(True, info={"element_level": True, "subgroup_level": True})
    seen = set()
    for a in S.elements():
        if a in seen:
            continue
        g_cls = [b for b in conjugacy_class(G, a) if b in sset]
        n_cls = set(conjugacy_class(N, a)) if N.is_member(a) else {a}
        seen.update(g_cls)
        for b in g_cls:
            if b not in n_cls:
                v.failures.append(("element", a, b, are_conjugate(G, a, b)))
                v.info["element_level"] = False
                break
    nel = N.elements()
    checked = 0
    for P in _subgroups_up_to(S, subgroup_order_cap):
        gens = [h for h in P.generators if not h.is_identity()]
        if not gens:
            continue
        checked += 1
        realized = {tuple(conjugate_element(h, n) for h in gens) for n in nel}
        for g in G.elements():
            img = tuple(conjugate_element(h, g) for h in gens)
            if all(y in sset for y in img) and img not in realized:
                v.failures.append(("subgroup", P, g))
                v.info["subgroup_level"] = False
                break
    v.info["subgroups_checked"] = checked
    v.holds = not v.failures
    return v


def hypothesis_equivalence(G, p):
    """Compare the index criterion with the fusion hypothesis; they must agree."""
    if G.order() % p:
        raise FusionKitError(f"{p} does not divide the group order {G.order()}")
    ch = camina_herzog(G, p)
    F = GroupFusionSystem(G, p)
    hy = hypothesis_H(F)
    agree = ch.holds == hy.holds
    v = Verdict(agree, info={"camina_herzog": ch.holds, "hypothesis_H": hy.holds})
    if not agree:
        v.failures = [f[0] for f in ch.failures] if not ch.holds else list(hy.failures)
    return v
