import pytest
from hypothesis import given, settings, strategies as st

from fusionkit.errors import (
    DegreeMismatch,
    ElementCapExceeded,
    FusionKitError,
    NotASubgroup,
    NotMember,
    NotPGroup,
)
from fusionkit.groups import (
    ABELIAN,
    ELEMENTARY_ABELIAN,
    NONABELIAN,
    PermGroup,
    are_conjugate,
    center,
    centralizer,
    classify_commutativity,
    complex_product,
    derived_subgroup,
    elements_of,
    exists_conjugate_into,
    group_from_generators,
    index,
    intersection,
    is_member,
    normalizer,
    omega1,
    p_part,
    subgroup_generated,
    sylow,
)
from fusionkit.perm import Permutation

import oracle
from util import family, perm


def D8(backend="oracle"):
    return group_from_generators([perm("(1 2 3 4)", 4), perm("(1 3)", 4)], backend)


def S4(backend="oracle"):
    return group_from_generators([perm("(1 2)", 4), perm("(1 2 3 4)", 4)], backend)


def A4(backend="oracle"):
    return family("alternating", 4, backend=backend)


def A5(backend="oracle"):
    return family("alternating", 5, backend=backend)


def tuples(H):
    return {g.images for g in H.elements()}


# -- construction and enumeration -----------------------------------------

def test_group_orders(backend):
    d8 = D8(backend)
    assert d8.order() == 8 == len(oracle.closure([g.images for g in d8.generators]))
    assert S4(backend).order() == 24
    assert group_from_generators([Permutation.identity(3)], backend).order() == 1


def test_empty_and_mixed_generators():
    with pytest.raises(FusionKitError):
        group_from_generators([])
    with pytest.raises(DegreeMismatch):
        group_from_generators([perm("(1 2)", 2), perm("(1 2)", 3)])


def test_element_cap():
    with pytest.raises(ElementCapExceeded):
        group_from_generators(S4().generators, "oracle", cap=10)
    G = group_from_generators(S4().generators, "chain", cap=10)
    assert G.order() == 24
    with pytest.raises(ElementCapExceeded):
        elements_of(G)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("FUSIONKIT_ELEMENT_CAP", "5")
    with pytest.raises(ElementCapExceeded):
        group_from_generators(S4().generators)


def test_elements_canonical(backend):
    els = elements_of(D8(backend))
    assert len(els) == 8 and len(set(els)) == 8
    assert els == sorted(els)
    s = set(els)
    assert all(a * b in s for a in els for b in els)
    c3 = group_from_generators([perm("(1 2 3)", 3)], backend)
    assert elements_of(c3) == [Permutation.identity(3), perm("(1 2 3)", 3), perm("(1 3 2)", 3)]
    assert elements_of(group_from_generators([Permutation.identity(2)], backend)) == [
        Permutation.identity(2)]


def test_membership(backend):
    G = D8(backend)
    assert is_member(G, Permutation.identity(4))
    assert is_member(G, perm("(1 3)(2 4)", 4))
    assert not is_member(A4(backend), perm("(1 2)", 4))
    with pytest.raises(DegreeMismatch):
        is_member(G, perm("(1 2)", 5))


# -- center / centralizer / normalizer ------------------------------------

def test_center_examples(backend):
    c4 = group_from_generators([perm("(1 2 3 4)", 4)], backend)
    assert tuples(center(c4)) == tuples(c4)
    z = center(D8(backend))
    assert z.elements() == [Permutation.identity(4), perm("(1 3)(2 4)", 4)]
    ref = oracle.closure([g.images for g in D8().generators])
    assert tuples(z) == oracle.centralizer(ref, ref)
    assert center(S4(backend)).order() == 1


def test_centralizer_examples(backend):
    G = S4(backend)
    assert tuples(centralizer(G, [Permutation.identity(4)])) == tuples(G)
    c = centralizer(G, [perm("(1 2)", 4)])
    assert sorted(str(x) for x in c.elements()) == sorted(["()", "(1 2)", "(3 4)", "(1 2)(3 4)"])
    ref = oracle.closure([g.images for g in S4().generators])
    assert tuples(c) == oracle.centralizer(ref, [perm("(1 2)", 4).images])
    a5 = A5(backend)
    c = centralizer(a5, [perm("(1 2)(3 4)", 5)])
    assert c.order() == 4
    assert classify_commutativity(c, 2) == ELEMENTARY_ABELIAN
    assert c.contains_group(center(a5))


def test_normalizer_examples(backend):
    G = S4(backend)
    assert normalizer(G, G).order() == 24
    H = subgroup_generated(G, [perm("(1 2 3 4)", 4)])
    N = normalizer(G, H)
    ref = oracle.closure([g.images for g in S4().generators])
    assert tuples(N) == oracle.normalizer(ref, tuples(H))
    assert N.order() == 8 and N.contains_group(H)
    a5 = A5(backend)
    assert normalizer(a5, sylow(a5, 2)).order() == 12


def test_normalizer_requires_subgroup():
    with pytest.raises(NotASubgroup):
        normalizer(A4(), subgroup_generated(S4(), [perm("(1 2)", 4)]))


# -- sylow, generated subgroups, derived, omega1 --------------------------

def test_sylow_examples(backend):
    d8 = D8(backend)
    assert tuples(sylow(d8, 2)) == tuples(d8)
    assert sylow(S4(backend), 2).order() == 8
    P = sylow(A5(backend), 2)
    assert P.order() == 4 and classify_commutativity(P, 2) == ELEMENTARY_ABELIAN
    with pytest.raises(FusionKitError):
        sylow(S4(), 4)


def test_sylow_deterministic():
    assert sylow(A5(), 2).elements() == sylow(A5("chain"), 2).elements()
    assert sylow(A5(), 2).elements() == sylow(A5(), 2).elements()


def test_subgroup_generated_examples(backend):
    G = S4(backend)
    assert subgroup_generated(G, []).order() == 1
    V = subgroup_generated(G, [perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)])
    assert V.order() == 4
    C = subgroup_generated(D8(backend), [perm("(1 2 3 4)", 4)])
    assert C.order() == 4 and classify_commutativity(C, 2) == ABELIAN
    with pytest.raises(NotMember):
        subgroup_generated(A4(backend), [perm("(1 2)", 4)])


def test_derived_examples(backend):
    assert derived_subgroup(group_from_generators([perm("(1 2 3 4)", 4)], backend)).order() == 1
    d = derived_subgroup(D8(backend))
    assert tuples(d) == tuples(center(D8(backend)))
    assert derived_subgroup(S4(backend)).order() == 12
    assert tuples(derived_subgroup(S4(backend))) == tuples(A4())


def test_omega1_examples(backend):
    V = family("elementary-abelian", 2, 2, backend=backend)
    assert tuples(omega1(V, 2)) == tuples(V)
    Q = family("quaternion", 8, backend=backend)
    O = omega1(Q, 2)
    assert O.order() == 2 and tuples(O) == tuples(center(Q))
    H = family("extraspecial", 3, backend=backend)
    O = omega1(H, 3)
    assert O.order() == 27 and classify_commutativity(O, 3) == NONABELIAN
    with pytest.raises(NotPGroup):
        omega1(S4(), 2)


def test_classify_examples():
    assert classify_commutativity(family("cyclic", 4), 2) == ABELIAN
    assert classify_commutativity(family("elementary-abelian", 2, 2), 2) == ELEMENTARY_ABELIAN
    assert classify_commutativity(D8(), 2) == NONABELIAN


# -- conjugacy ------------------------------------------------------------

def test_are_conjugate_examples(backend):
    G = S4(backend)
    x = perm("(1 2)", 4)
    assert are_conjugate(G, x, x).is_identity()
    g = are_conjugate(G, x, perm("(3 4)", 4))
    assert g == perm("(1 3)(2 4)", 4)
    assert g.inverse() * x * g == perm("(3 4)", 4)
    G = A4(backend)
    assert are_conjugate(G, perm("(1 2 3)", 4), perm("(1 3 2)", 4)) is None


def test_are_conjugate_reference():
    ref = oracle.closure([g.images for g in A4().generators])
    x, y = perm("(1 2 3)", 4).images, perm("(1 3 2)", 4).images
    assert not any(oracle.conj(x, g) == y for g in ref)


def test_exists_conjugate_into_examples(backend):
    a5 = A5(backend)
    S = sylow(a5, 2)
    Z = center(S)
    for x in a5.elements():
        if x.order in (1, 2):
            g = exists_conjugate_into(a5, x, Z)
            assert g is not None and Z.is_member(g.inverse() * x * g)
    z = Z.elements()[1]
    assert exists_conjugate_into(a5, z, Z).is_identity()
    d8 = D8(backend)
    assert exists_conjugate_into(d8, perm("(1 2 3 4)", 4), center(d8)) is None


# -- products, index ------------------------------------------------------

def test_complex_product_examples(backend):
    d8 = D8(backend)
    Z = center(d8)
    assert complex_product(Z, Z) == set(Z.elements())
    T = subgroup_generated(d8, [])
    assert complex_product(T, Z) == set(Z.elements())
    U = omega1(d8, 2)
    prod = complex_product(Z, U)
    brute = {oracle.mul(a, b) for a in tuples(Z) for b in tuples(U)}
    assert {x.images for x in prod} == brute
    assert len(prod) * intersection(Z, U).order() == Z.order() * U.order()


def test_complex_product_parent_mismatch():
    A = subgroup_generated(S4(), [perm("(1 2)", 4)])
    B = subgroup_generated(A5(), [perm("(1 2 3)", 5)])
    with pytest.raises(NotASubgroup):
        complex_product(A, B)


def test_index_examples(backend):
    G = S4(backend)
    assert index(G, G) == 1
    assert index(G, centralizer(G, [perm("(1 2)", 4)])) == 6
    a5 = A5(backend)
    assert index(a5, centralizer(a5, [perm("(1 2)(3 4)", 5)])) == 15
    with pytest.raises(NotASubgroup):
        index(A4(), subgroup_generated(S4(), [perm("(1 2)", 4)]))


# -- invariants -----------------------------------------------------------

small_gens = st.lists(st.permutations(list(range(5))).map(Permutation), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(small_gens, st.randoms(use_true_random=False))
def test_backend_equivalence_random(gens, rnd):
    A = PermGroup(gens, backend="oracle")
    B = PermGroup(gens, backend="chain")
    assert A.order() == B.order()
    for p in oracle.all_perms(5):
        x = Permutation(p)
        assert A.is_member(x) == B.is_member(x)
    assert tuples(center(A)) == tuples(center(B))
    x = rnd.choice(A.elements())
    assert tuples(centralizer(A, [x])) == tuples(centralizer(B, [x]))
    H = subgroup_generated(A, [x])
    assert tuples(normalizer(A, H)) == tuples(normalizer(B, subgroup_generated(B, [x])))
    for p in (2, 3, 5):
        assert sylow(A, p).order() == sylow(B, p).order() == p_part(A.order(), p)


@settings(max_examples=30, deadline=None)
@given(small_gens, st.randoms(use_true_random=False))
def test_lagrange_and_centralizer_chain(gens, rnd):
    G = PermGroup(gens)
    xs = rnd.sample(G.elements(), min(2, G.order()))
    C = centralizer(G, xs)
    assert G.order() % C.order() == 0
    assert index(G, C) * C.order() == G.order()
    assert C.contains_group(center(G))
    assert tuples(centralizer(G, G.generators)) == tuples(center(G))
    assert (derived_subgroup(G).order() == 1) == (classify_commutativity(G, 2) != NONABELIAN)


@settings(max_examples=30, deadline=None)
@given(small_gens, st.randoms(use_true_random=False))
def test_conjugacy_is_equivalence(gens, rnd):
    G = PermGroup(gens)
    a, b, c = (rnd.choice(G.elements()) for _ in range(3))
    assert are_conjugate(G, a, a) is not None
    g = are_conjugate(G, a, b)
    if g is not None:
        assert are_conjugate(G, b, a) is not None
        assert (g.inverse() * a * g) == b
        h = are_conjugate(G, b, c)
        if h is not None:
            assert ((g * h).inverse() * a * (g * h)) == c
            assert are_conjugate(G, a, c) is not None


@pytest.mark.parametrize("name,params", [("symmetric", (4,)), ("alternating", (5,)),
                                         ("psl2", (7,)), ("dihedral", (12,))])
def test_omega1_characteristic(name, params):
    G = family(name, *params)
    P = sylow(G, 2)
    U = omega1(P, 2)
    uset = set(U.elements())
    for g in normalizer(G, P).elements():
        assert {g.inverse() * u * g for u in uset} == uset


def test_thread_shared_group():
    from concurrent.futures import ThreadPoolExecutor
    G = group_from_generators(family("psl2", 7).generators, "chain")
    with ThreadPoolExecutor(4) as ex:
        orders = list(ex.map(lambda _: len(G.elements()), range(8)))
    assert orders == [168] * 8

