"""Deterministic Schreier-Sims stabilizer chains over image tuples.

Permutations here are plain 0-based image tuples; products act on the right
(``a*b`` means apply ``a`` then ``b``).  The chain gives order, membership by
sifting, element enumeration, and a base-image backtrack used for
centralizers.
"""
from __future__ import annotations

from dataclasses import dataclass, field


def _mul(a, b):
    return tuple([b[i] for i in a])


def _inv(a):
    r = [0] * len(a)
    for i, j in enumerate(a):
        r[j] = i
    return tuple(r)


def _is_id(a):
    return all(i == j for i, j in enumerate(a))


@dataclass
class _Level:
    point: int
    gens: list = field(default_factory=list)
    # transversal[beta] maps the base point to beta
    transversal: dict = field(default_factory=dict)

    def rebuild(self, n):
        ident = tuple(range(n))
        tr = {self.point: ident}
        queue = [self.point]
        i = 0
        while i < len(queue):
            beta = queue[i]
            i += 1
            u = tr[beta]
            for s in self.gens:
                gamma = s[beta]
                if gamma not in tr:
                    tr[gamma] = _mul(u, s)
                    queue.append(gamma)
        self.transversal = tr


class StabilizerChain:
    """Base and strong generating set for the group generated by ``gens``.

    ``base_prefix`` fixes the first base points (redundant points are kept,
    giving trivial orbits); further points are appended as needed.
    """

    def __init__(self, gens, degree, base_prefix=()):
        self.degree = degree
        gens = [tuple(g) for g in gens if not _is_id(g)]
        self.levels = [_Level(p) for p in base_prefix]
        for g in gens:
            if not any(g[lv.point] != lv.point for lv in self.levels):
                self.levels.append(_Level(next(i for i, j in enumerate(g) if i != j)))
        for i, lv in enumerate(self.levels):
            fixed = [l.point for l in self.levels[:i]]
            lv.gens = [g for g in gens if all(g[b] == b for b in fixed)]
            lv.rebuild(degree)
        self._complete()

    @property
    def base(self):
        return [lv.point for lv in self.levels]

    def _sift(self, h, start=0):
        for j in range(start, len(self.levels)):
            lv = self.levels[j]
            beta = h[lv.point]
            u = lv.transversal.get(beta)
            if u is None:
                return h, j
            h = _mul(h, _inv(u))
        return h, len(self.levels)

    def _complete(self):
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            extended = False
            for beta, u in list(lv.transversal.items()):
                for s in lv.gens:
                    ub = lv.transversal[s[beta]]
                    schreier = _mul(_mul(u, s), _inv(ub))
                    h, j = self._sift(schreier, i + 1)
                    if j < len(self.levels) or not _is_id(h):
                        if j == len(self.levels):
                            moved = next(p for p, q in enumerate(h) if p != q)
                            self.levels.append(_Level(moved))
                        for l in range(i + 1, j + 1):
                            self.levels[l].gens.append(h)
                            self.levels[l].rebuild(self.degree)
                        i = j
                        extended = True
                        break
                if extended:
                    break
            if not extended:
                i -= 1

    def order(self):
        n = 1
        for lv in self.levels:
            n *= len(lv.transversal)
        return n

    def contains(self, g):
        h, j = self._sift(tuple(g))
        return j == len(self.levels) and _is_id(h)

    def elements(self):
        """All elements as products ``u_k ... u_1 u_0`` (unsorted)."""
        out = [tuple(range(self.degree))]
        for lv in reversed(self.levels):
            trs = list(lv.transversal.values())
            out = [_mul(e, u) for e in out for u in trs]
        return out

    def search(self, leaf_test, prune=None):
        """Backtrack over base images.

        At depth ``k`` the partial product ``h = u_k ... u_0`` fixes the images
        of base points ``0..k``; ``prune(h, k)`` returning False cuts the
        subtree.  Leaves satisfying ``leaf_test`` are returned (unsorted).
        """
        levels = self.levels
        depth = len(levels)
        found = []
        if depth == 0:
            e = tuple(range(self.degree))
            return [e] if leaf_test(e) else []

        # products are built from the top level down: g = u_{m-1} ... u_0,
        # so the element acting on base point k is determined by u_k..u_0.
        # Walk levels in order 0..m-1, prepending factors.
        def rec(k, h):
            if k == depth:
                if leaf_test(h):
                    found.append(h)
                return
            for u in levels[k].transversal.values():
                hk = _mul(u, h)
                if prune is None or prune(hk, k):
                    rec(k + 1, hk)

        rec(0, tuple(range(self.degree)))
        return found


def centralizer_search(gens, degree, xs):
    """Elements of <gens> commuting with every tuple in ``xs``.

    The base starts with the points of each cycle of ``xs[0]`` in cycle order,
    so the commuting constraint ``(b^x)^g = (b^g)^x`` can be checked on
    partial base images.
    """
    xs = [tuple(x) for x in xs]
    prefix = []
    if xs:
        x0 = xs[0]
        seen = set()
        for p in range(degree):
            if p in seen or x0[p] == p:
                continue
            q = p
            while q not in seen:
                seen.add(q)
                prefix.append(q)
                q = x0[q]
    chain = StabilizerChain(gens, degree, base_prefix=prefix)
    base = chain.base
    pos = {b: i for i, b in enumerate(base)}
    # pairs (j, l, x): x maps base[j] to base[l]
    checks = [[] for _ in base]
    for x in xs:
        for j, b in enumerate(base):
            l = pos.get(x[b])
            if l is not None:
                checks[max(j, l)].append((b, x[b], x))

    def prune(h, k):
        for b, xb, x in checks[k]:
            if h[xb] != x[h[b]]:
                return False
        return True

    def leaf(g):
        return all(_mul(x, g) == _mul(g, x) for x in xs)

    return chain.search(leaf, prune)
