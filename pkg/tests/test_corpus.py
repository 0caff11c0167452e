import pytest

from fusionkit.corpus import (
    GroupSpec,
    build_family,
    builtin,
    format_corpus,
    parse_corpus_file,
    parse_corpus_text,
    shipped_corpus,
)
from fusionkit.errors import CorpusError, FusionKitError
from fusionkit.fusion import camina_herzog
from fusionkit.groups import ELEMENTARY_ABELIAN, classify_commutativity, sylow

import oracle


def test_parse_single_record(tmp_path):
    path = tmp_path / "c.tsv"
    path.write_text("C4\t4\t(1 2 3 4)\thypothesis-true\n", encoding="utf-8")
    (spec,) = parse_corpus_file(path)
    assert spec == GroupSpec("C4", 4, ("(1 2 3 4)",), ("hypothesis-true",))
    assert spec.build().order() == 4


def test_parse_empty(tmp_path):
    path = tmp_path / "e.tsv"
    path.write_text("", encoding="utf-8")
    assert parse_corpus_file(path) == []


def test_comments_and_order():
    text = "# comment\n\nB\t3\t(1 2 3)\t\nA\t2\t(1 2)\tx,y\n"
    specs = parse_corpus_text(text)
    assert [s.name for s in specs] == ["B", "A"]
    assert specs[1].tags == ("x", "y")


@pytest.mark.parametrize("text,line", [
    ("C4\t4\t(1 9)\t\n", 1),
    ("# c\nC4\t4\t(1 2 3 4)\t\nC4\t4\t(1 2)\t\n", 3),
    ("C4\t4\n", 1),
    ("C4\tfour\t(1 2)\t\n", 1),
    ("C4\t4\t(1 2\t\n", 1),
    ("C4\t4\t\t\n", 1),
])
def test_positioned_errors(text, line):
    with pytest.raises(CorpusError) as exc:
        parse_corpus_text(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_missing_file(tmp_path):
    with pytest.raises(CorpusError):
        parse_corpus_file(tmp_path / "nope.tsv")


def test_round_trip_shipped(tmp_path):
    specs = shipped_corpus()
    path = tmp_path / "shipped.tsv"
    path.write_text(format_corpus(specs), encoding="utf-8")
    assert parse_corpus_file(path) == specs


def test_dihedral_standard_generators():
    spec = build_family("dihedral", 8)
    assert spec.degree == 4
    assert spec.generators == ("(1 2 3 4)", "(1 3)")
    assert spec.build().order() == 8


def test_extraspecial_exponent_three():
    spec = build_family("extraspecial", 3)
    assert spec.degree == 27
    gens = [p.images for p in spec.permutations()]
    G = oracle.closure(gens)
    assert len(G) == 27
    assert {oracle.order(g) for g in G} == {1, 3}


def test_psl2_5_matches_a5_path():
    spec = build_family("psl2", 5)
    assert spec.degree == 6
    G = spec.build()
    assert G.order() == 60 == len(oracle.closure([p.images for p in spec.permutations()]))
    assert sylow(G, 2).order() == 4
    assert camina_herzog(G, 2).holds


@pytest.mark.parametrize("family,params,order,degree", [
    ("cyclic", (5,), 5, 5),
    ("quaternion", (8,), 8, 8),
    ("quaternion", (16,), 16, 16),
    ("elementary-abelian", (3, 2), 9, 6),
    ("symmetric", (5,), 120, 5),
    ("alternating", (6,), 360, 6),
    ("psl2", (7,), 168, 8),
    ("psl2", (8,), 504, 9),
    ("psl2", (11,), 660, 12),
    ("sl2", (3,), 24, 8),
])
def test_family_orders(family, params, order, degree):
    spec = build_family(family, *params)
    assert spec.degree == degree
    assert spec.expected_order == order
    assert len(oracle.closure([p.images for p in spec.permutations()])) == order


def test_quaternion_has_unique_involution():
    G = oracle.closure([p.images for p in build_family("quaternion", 8).permutations()])
    assert sum(oracle.order(g) == 2 for g in G) == 1


def test_direct_product():
    a = build_family("alternating", 5)
    c = build_family("cyclic", 2)
    spec = build_family("direct-product", a, c)
    assert spec.degree == 7 and spec.build().order() == 120


@pytest.mark.parametrize("family,params", [
    ("dihedral", (7,)), ("quaternion", (6,)), ("psl2", (9,)), ("extraspecial", (2,)),
    ("sl2", (4,)), ("alternating", (2,)), ("nonsense", (1,)),
])
def test_unsupported(family, params):
    with pytest.raises(FusionKitError):
        build_family(family, *params)


def test_builders_deterministic():
    for fam, params in [("psl2", (8,)), ("quaternion", (16,)), ("extraspecial", (3,))]:
        assert build_family(fam, *params) == build_family(fam, *params)


def test_shipped_corpus_contents(corpus):
    names = {s.name for s in corpus}
    required = {"C2", "C4", "V4", "D8", "Q8", "S3", "S4", "A4", "A5", "SL(2,3)",
                "PSL(2,7)", "PSL(2,8)", "3^(1+2)", "A5xC2", "D8xC3"}
    assert required <= names
    assert len(names) == len(corpus)
    for spec in corpus:
        n = spec.build(backend="chain").order()
        assert n == spec.expected_order
        assert n <= 2000
    assert "hypothesis-true" in builtin("A5").tags and "abelian-Sylow" in builtin("A5").tags
    assert "negative-control" in builtin("S4").tags
    assert "odd-prime-demo" in builtin("3^(1+2)").tags


def test_shipped_p_groups_small_degree(corpus):
    for spec in corpus:
        G = spec.build(backend="chain")
        n = G.order()
        if oracle.is_p_power(n, 2) or oracle.is_p_power(n, 3):
            assert spec.degree <= 32


def test_psl28_featured():
    spec = builtin("PSL(2,8)")
    assert "featured" in spec.tags
    G = spec.build()
    S = sylow(G, 2)
    assert S.order() == 8
    assert classify_commutativity(S, 2) == ELEMENTARY_ABELIAN
    assert camina_herzog(G, 2).holds


def test_builtin_lookup():
    assert builtin("psl27").name == "PSL(2,7)"
    assert builtin("D8-as-G").name == "D8"
    with pytest.raises(CorpusError):
        builtin("M24")
