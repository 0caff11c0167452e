"""Group specifications, family builders and the shipped corpus.

Corpus files are UTF-8, one record per line, tab-separated::

    name <TAB> degree <TAB> gen1;gen2;... <TAB> tag1,tag2,...

Generators are cycle strings.  Blank lines and lines starting with ``#``
are ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product

from .errors import CorpusError, FusionKitError, PermutationError
from .groups import PermGroup, is_prime
from .perm import Permutation, parse_cycles


@dataclass(frozen=True)
class GroupSpec:
    name: str
    degree: int
    generators: tuple
    tags: tuple = ()
    # known order from a builder; not part of the file format
    expected_order: int | None = field(default=None, compare=False)

    def permutations(self):
        return [parse_cycles(g, self.degree) for g in self.generators]

    def build(self, backend="oracle", cap=None):
        return PermGroup(self.permutations(), backend=backend, degree=self.degree, cap=cap)

    def to_line(self):
        return "\t".join([self.name, str(self.degree), ";".join(self.generators),
                          ",".join(self.tags)])


def parse_corpus_line(line, lineno=None):
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) == 3:
        fields.append("")
    if len(fields) != 4:
        raise CorpusError(f"expected 4 tab-separated fields, got {len(fields)}", lineno)
    name, deg, gens, tags = (f.strip() for f in fields)
    if not name:
        raise CorpusError("empty name", lineno)
    try:
        degree = int(deg)
    except ValueError:
        raise CorpusError(f"bad degree {deg!r}", lineno) from None
    if degree < 1:
        raise CorpusError(f"degree must be positive, got {degree}", lineno)
    gen_list = tuple(g.strip() for g in gens.split(";") if g.strip())
    if not gen_list:
        raise CorpusError("no generators", lineno)
    for g in gen_list:
        try:
            parse_cycles(g, degree)
        except PermutationError as exc:
            raise CorpusError(f"generator {g!r}: {exc}", lineno) from None
    tag_list = tuple(t.strip() for t in tags.split(",") if t.strip())
    return GroupSpec(name, degree, gen_list, tag_list)


def parse_corpus_text(text):
    specs = []
    names = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        spec = parse_corpus_line(line, lineno)
        if spec.name in names:
            raise CorpusError(f"duplicate name {spec.name!r}", lineno)
        names.add(spec.name)
        specs.append(spec)
    return specs


def parse_corpus_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from None
    return parse_corpus_text(text)


def format_corpus(specs):
    return "".join(s.to_line() + "\n" for s in specs)


# -- family builders -------------------------------------------------------

def _from_images(images):
    """0-based image list -> cycle string."""
    return str(Permutation(images))


def _cycle(points):
    return "(" + " ".join(map(str, points)) + ")"


def _regular(elements, mul, gens):
    """Cycle strings of right multiplication by ``gens`` on ``elements``."""
    index = {e: i for i, e in enumerate(elements)}
    return [_from_images([index[mul(e, g)] for e in elements]) for g in gens]


def _gf(q):
    """(add, mul, neg, inv, elements, primitive) for GF(q), q in primes or 8."""
    if is_prime(q):
        elems = list(range(q))
        add = lambda a, b: (a + b) % q
        mul = lambda a, b: (a * b) % q
        neg = lambda a: (-a) % q
        prim = next(w for w in range(2, q + 1)
                    if len({pow(w, k, q) for k in range(1, q)}) == q - 1) if q > 2 else 1
    elif q == 8:
        elems = list(range(8))

        def mul(a, b):
            r = 0
            for i in range(3):
                if b >> i & 1:
                    r ^= a << i
            for i in (4, 3):
                if r >> i & 1:
                    r ^= 0b1011 << (i - 3)
            return r

        add = lambda a, b: a ^ b
        neg = lambda a: a
        prim = 2
    else:
        raise FusionKitError(f"unsupported field order {q}")

    def inv(a):
        return next(b for b in elems if mul(a, b) == 1)

    return add, mul, neg, inv, elems, prim


def _psl2(q):
    add, mul, neg, inv, elems, w = _gf(q)
    inf = q
    points = elems + [inf]

    def mobius(a, b, c, d):
        def f(z):
            if z == inf:
                return inf if c == 0 else mul(a, inv(c))
            den = add(mul(c, z), d)
            if den == 0:
                return inf
            return mul(add(mul(a, z), b), inv(den))
        return [f(z) for z in points]

    one = 1
    w2 = mul(w, w)
    gens = [mobius(one, one, 0, one),           # z + 1
            mobius(0, neg(one), one, 0),        # -1/z
            mobius(w2, 0, 0, one)]              # w^2 z
    out = []
    for g in gens:
        s = _from_images(g)
        if s != "()" and s not in out:
            out.append(s)
    return out


def _sl2_vectors(p):
    vecs = [v for v in product(range(p), repeat=2) if v != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}

    def act(m):
        (a, b), (c, d) = m
        return _from_images([index[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in vecs])

    return vecs, [act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))]


def _shift(cycle_text, degree, offset):
    perm = parse_cycles(cycle_text, degree)
    cycles = [tuple(p + offset for p in c) for c in perm.cycles()]
    return "".join(_cycle(c) for c in cycles) or "()"


FAMILIES = ("cyclic", "dihedral", "quaternion", "elementary-abelian", "symmetric",
            "alternating", "extraspecial", "psl2", "sl2", "direct-product")


def build_family(family, *params, name=None, tags=()):
    """Deterministic generators for a standard family.

    ==================  ===================  ===================================
    family              params               action
    ==================  ===================  ===================================
    cyclic              n                    n-cycle on n points
    dihedral            order 2n (n >= 3)    polygon on n points
    quaternion          order 4n (n >= 2)    regular, 4n points
    elementary-abelian  p, k                 k disjoint p-cycles
    symmetric           n                    natural
    alternating         n (n >= 3)           natural
    extraspecial        p (odd)              Heisenberg mod p, regular, p^3 pts
    psl2                q in {5, 7, 8, 11}   projective line, q + 1 points
    sl2                 prime q              nonzero vectors, q^2 - 1 points
    direct-product      spec_a, spec_b       disjoint union
    ==================  ===================  ===================================
    """
    tags = tuple(tags)
    if family == "cyclic":
        (n,) = params
        if n < 1:
            raise FusionKitError("cyclic order must be positive")
        gens = [_cycle(range(1, n + 1)) if n > 1 else "()"]
        return GroupSpec(name or f"C{n}", n, tuple(gens), tags, n)
    if family == "dihedral":
        (order,) = params
        if order % 2 or order < 6:
            raise FusionKitError("dihedral order must be even and at least 6")
        n = order // 2
        refl = [(2 - i) % n for i in range(n)]
        gens = (_cycle(range(1, n + 1)), _from_images(refl))
        return GroupSpec(name or f"D{order}", n, gens, tags, order)
    if family == "quaternion":
        (order,) = params
        if order % 4 or order < 8:
            raise FusionKitError("quaternion order must be a multiple of 4, at least 8")
        n = order // 4
        m = 2 * n
        elems = [(i, j) for j in (0, 1) for i in range(m)]

        def mul(x, y):
            # a^i b^j * a^k b^l with b a = a^-1 b and b^2 = a^n
            i, j = x
            k, l = y
            e = (i + (k if j == 0 else -k)) % m
            if j + l == 2:
                return ((e + n) % m, 0)
            return (e, j + l)

        gens = tuple(_regular(elems, mul, [(1, 0), (0, 1)]))
        return GroupSpec(name or f"Q{order}", order, gens, tags, order)
    if family == "elementary-abelian":
        p, k = params
        if not is_prime(p) or k < 1:
            raise FusionKitError("elementary-abelian needs prime p and k >= 1")
        gens = tuple(_cycle(range(i * p + 1, (i + 1) * p + 1)) for i in range(k))
        return GroupSpec(name or f"E{p ** k}", p * k, gens, tags, p ** k)
    if family == "symmetric":
        (n,) = params
        if n < 1:
            raise FusionKitError("symmetric degree must be positive")
        if n == 1:
            gens = ("()",)
        elif n == 2:
            gens = ("(1 2)",)
        else:
            gens = (_cycle(range(1, n + 1)), "(1 2)")
        fact = 1
        for i in range(2, n + 1):
            fact *= i
        return GroupSpec(name or f"S{n}", n, gens, tags, fact)
    if family == "alternating":
        (n,) = params
        if n < 3:
            raise FusionKitError("alternating degree must be at least 3")
        gens = tuple(_cycle((1, 2, k)) for k in range(3, n + 1))
        fact = 1
        for i in range(2, n + 1):
            fact *= i
        return GroupSpec(name or f"A{n}", n, gens, tags, fact // 2)
    if family == "extraspecial":
        (p,) = params
        if not is_prime(p) or p == 2:
            raise FusionKitError("exponent-p extraspecial groups need an odd prime")
        elems = list(product(range(p), repeat=3))

        def mul(x, y):
            return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

        gens = tuple(_regular(elems, mul, [(1, 0, 0), (0, 1, 0)]))
        return GroupSpec(name or f"{p}^(1+2)", p ** 3, gens, tags, p ** 3)
    if family == "psl2":
        (q,) = params
        if q not in (5, 7, 8, 11):
            raise FusionKitError(f"psl2 supports q in 5, 7, 8, 11; got {q}")
        d = 1 if q % 2 == 0 else 2
        order = q * (q * q - 1) // d
        return GroupSpec(name or f"PSL(2,{q})", q + 1, tuple(_psl2(q)), tags, order)
    if family == "sl2":
        (q,) = params
        if not is_prime(q):
            raise FusionKitError("sl2 supports prime q only")
        _, gens = _sl2_vectors(q)
        return GroupSpec(name or f"SL(2,{q})", q * q - 1, tuple(gens), tags, q * (q * q - 1))
    if family == "direct-product":
        a, b = params
        gens = [_shift(g, a.degree, 0) for g in a.generators]
        gens += [_shift(g, b.degree, a.degree) for g in b.generators]
        deg = a.degree + b.degree
        gens = [parse_cycles(g, deg) for g in gens]
        gens = [str(g) for g in gens if not g.is_identity()] or ["()"]
        order = None
        if a.expected_order and b.expected_order:
            order = a.expected_order * b.expected_order
        return GroupSpec(name or f"{a.name}x{b.name}", deg, tuple(gens), tags, order)
    raise FusionKitError(f"unknown family {family!r}")


HYP = "hypothesis-true"
ABEL = "abelian-Sylow"
NEG = "negative-control"
ODD = "odd-prime-demo"


def shipped_corpus():
    """The curated corpus, in a fixed order, every group of order <= 2000."""
    c2 = build_family("cyclic", 2)
    c3 = build_family("cyclic", 3)
    a5 = build_family("alternating", 5, tags=(HYP, ABEL))
    d8 = build_family("dihedral", 8, tags=(NEG,))
    psl28 = build_family("psl2", 8, tags=(HYP, ABEL, "featured"))
    return [
        build_family("cyclic", 2, tags=(HYP, ABEL)),
        build_family("cyclic", 4, tags=(HYP, ABEL)),
        build_family("cyclic", 6, tags=(HYP, ABEL)),
        build_family("elementary-abelian", 2, 2, name="V4", tags=(HYP, ABEL)),
        build_family("elementary-abelian", 2, 3, name="E8", tags=(HYP, ABEL)),
        d8,
        build_family("dihedral", 12, tags=(HYP, ABEL)),
        build_family("quaternion", 8, tags=(NEG,)),
        build_family("quaternion", 16, tags=(NEG,)),
        build_family("symmetric", 3, tags=(HYP, ABEL)),
        build_family("symmetric", 4, tags=(NEG,)),
        build_family("alternating", 4, tags=(HYP, ABEL)),
        a5,
        build_family("psl2", 5, tags=(HYP, ABEL)),
        build_family("symmetric", 5, tags=(NEG,)),
        build_family("alternating", 6, tags=(NEG,)),
        build_family("sl2", 3, tags=(NEG,)),
        build_family("psl2", 7, tags=(NEG,)),
        psl28,
        build_family("psl2", 11, tags=(HYP, ABEL)),
        build_family("extraspecial", 3, name="3^(1+2)", tags=(ODD,)),
        build_family("direct-product", a5, c2, name="A5xC2", tags=(HYP, ABEL)),
        build_family("direct-product", d8, c3, name="D8xC3", tags=(NEG,)),
        build_family("direct-product", psl28, c2, name="PSL(2,8)xC2", tags=(HYP, ABEL)),
    ]


ALIASES = {"d8asg": "D8"}


def _norm(name):
    return re.sub(r"[^0-9a-z^]", "", name.lower())


def builtin(name):
    """Look up a shipped group by name (case and punctuation insensitive)."""
    key = _norm(name)
    key = _norm(ALIASES.get(key, key))
    for spec in shipped_corpus():
        if _norm(spec.name) == key:
            return spec
    raise CorpusError(f"no builtin group named {name!r}")
