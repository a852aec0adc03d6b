"""Linear vector enumeration for a cyclic module of the BMW algebra.

The module is generated by one vector x0 subject to a few relations, and the
algebra relations are imposed on every vector that appears.  Vectors are
sparse combinations of "cells"; each cell records its image under every g_i
once known.  When a relation forces a linear dependency, the highest cell is
eliminated and its recorded images are re-imposed (a linear analogue of
coset enumeration).  The process stops once every live cell has been
processed, at which point the live cells form a basis of the module.

Scalars can be any exact field type.  ``BatchResidues`` runs the whole
enumeration simultaneously at many points modulo a prime, which is how the
completed matrices are computed before exact interpolation.
"""

import numpy as np

from .roots import E6


class EnumerationError(RuntimeError):
    pass


class MixedZeroError(EnumerationError):
    """A scalar vanished at some evaluation points but not at others."""


class Enumerator:
    def __init__(self, one, l, r, diagram=E6, max_cells=20000):
        self.one = one
        self.l = l
        self.r = r
        self.m = one / r - r
        self.delta = one - (l - one / l) / self.m
        self.l_over_m = l / self.m
        self.diagram = diagram
        self.max_cells = max_cells
        self.images = []
        self.dead = {}
        self.queue = []

    def new_cell(self):
        if len(self.images) >= self.max_cells:
            raise EnumerationError(f"more than {self.max_cells} cells; the enumeration does not close")
        self.images.append({})
        return len(self.images) - 1

    def reduce(self, vec):
        out = {}
        stack = list(vec.items())
        while stack:
            c, a = stack.pop()
            rep = self.dead.get(c)
            if rep is not None:
                for c2, a2 in rep.items():
                    stack.append((c2, a * a2))
            else:
                out[c] = out[c] + a if c in out else a
        return {c: a for c, a in out.items() if a}

    def combine(self, terms):
        out = {}
        for s, vec in terms:
            for c, a in vec.items():
                t = a if s is None else s * a
                out[c] = out[c] + t if c in out else t
        return self.reduce(out)

    def g(self, i, vec):
        out = {}
        for c, a in self.reduce(vec).items():
            im = self.images[c].get(i)
            if im is None:
                im = {self.new_cell(): self.one}
                self.images[c][i] = im
            for c2, a2 in im.items():
                t = a * a2
                out[c2] = out[c2] + t if c2 in out else t
        return self.reduce(out)

    def e(self, i, vec):
        g1 = self.g(i, vec)
        g2 = self.g(i, g1)
        lm = self.l_over_m
        return self.combine([(lm, g2), (lm * self.m, g1), (-lm, vec)])

    def apply(self, program, vec):
        """Apply a word (tuple of (symbol, i)), rightmost letter first."""
        for sym, i in reversed(program):
            if sym == "g":
                vec = self.g(i, vec)
            elif sym == "e":
                vec = self.e(i, vec)
            else:
                raise ValueError(f"letter {sym!r} not supported in enumeration")
        return vec

    def _coincide(self, rel):
        rel = self.reduce(rel)
        if not rel:
            return
        h = max(rel)
        f = -(self.one / rel[h])
        rep = {c: a * f for c, a in rel.items() if c != h}
        self.dead[h] = rep
        for i, im in self.images[h].items():
            self.queue.append((i, rep, im))
        self.images[h] = {}

    def _drain(self):
        while self.queue:
            i, rep, im = self.queue.pop()
            self._coincide(self.combine([(None, self.g(i, rep)), (-self.one, im)]))

    def impose(self, lhs, rhs, vec):
        """Impose sum(c * w(vec)) over lhs = the same over rhs."""
        terms = [(c, self.apply(w, vec)) for c, w in lhs]
        terms += [(-c, self.apply(w, vec)) for c, w in rhs]
        self._coincide(self.combine(terms))
        self._drain()

    def live_cells(self):
        return [c for c in range(len(self.images)) if c not in self.dead]


def _w(text):
    return tuple((tok[0], int(tok[1:])) for tok in text.split())


def algebra_relations(E):
    """Relations imposed on every cell, with coefficients in E's field."""
    one, l = E.one, E.l
    d = E.diagram
    rels = []
    for i in d.nodes:
        for j in d.nodes:
            if i == j:
                continue
            if d.adjacent(i, j):
                if i < j:
                    rels.append(([(one, _w(f"g{i} g{j} g{i}"))], [(one, _w(f"g{j} g{i} g{j}"))]))
                rels.append(([(one, _w(f"e{i} g{j} e{i}"))], [(l, _w(f"e{i}"))]))
                rels.append(([(one, _w(f"e{i} e{j} e{i}"))], [(one, _w(f"e{i}"))]))
                rels.append(([(one, _w(f"g{i} g{j} e{i}"))], [(one, _w(f"e{j} e{i}"))]))
            else:
                if i < j:
                    rels.append(([(one, _w(f"g{i} g{j}"))], [(one, _w(f"g{j} g{i}"))]))
                rels.append(([(one, _w(f"e{i} e{j}"))], []))
        rels.append(([(one, _w(f"g{i} e{i}"))], [(one / l, _w(f"e{i}"))]))
        rels.append(([(one, _w(f"e{i} e{i}"))], [(E.delta, _w(f"e{i}"))]))
    return rels


def generator_relations(E):
    """Relations on x0 = e6 (x) 1: the right Hecke character is r on g1..g4 and on xi."""
    one, r = E.one, E.r
    rels = [([(one, _w(f"g{i}"))], [(r, ())]) for i in (1, 2, 3, 4)]
    rels.append(([(one, _w("e6"))], [(E.delta, ())]))
    rels.append(([(one / E.delta, _w("e6 e5 e4 e2 g3 e2 e4 e5"))], [(r, ())]))
    return rels


def enumerate_module(one, l, r, max_cells=20000, progress=None):
    """Run the enumeration; returns (enumerator, x0 cell, live cells)."""
    E = Enumerator(one, l, r, max_cells=max_cells)
    x0 = E.new_cell()
    for lhs, rhs in generator_relations(E):
        E.impose(lhs, rhs, {x0: one})
    rels = algebra_relations(E)
    k = 0
    while k < len(E.images):
        if k not in E.dead:
            for lhs, rhs in rels:
                if k in E.dead:
                    break
                E.impose(lhs, rhs, {k: one})
        k += 1
        if progress is not None and k % 500 == 0:
            progress(k, len(E.images), len(E.images) - len(E.dead))
    return E, x0, E.live_cells()


# ------------------------------------------------------------ batched scalars

class BatchResidues:
    """A scalar evaluated at N points modulo a prime below 2^31.

    Truth value: nonzero at every point.  A value that vanishes at only some
    of the points means an unlucky point; MixedZeroError is raised and the
    caller retries with fresh points.
    """

    __slots__ = ("a", "p")

    def __init__(self, a, p):
        self.a = a
        self.p = p

    def __add__(self, o):
        return BatchResidues((self.a + o.a) % self.p, self.p)

    def __sub__(self, o):
        return BatchResidues((self.a - o.a) % self.p, self.p)

    def __mul__(self, o):
        return BatchResidues(self.a * o.a % self.p, self.p)

    def __neg__(self):
        return BatchResidues((-self.a) % self.p, self.p)

    def __truediv__(self, o):
        if not o.a.all():
            raise MixedZeroError("division by a value vanishing at some points")
        return BatchResidues(self.a * inverse_mod(o.a, self.p) % self.p, self.p)

    def __bool__(self):
        nz = self.a != 0
        if nz.all():
            return True
        if not nz.any():
            return False
        raise MixedZeroError("value vanishes at some evaluation points only")


def inverse_mod(a, p):
    res = np.ones_like(a)
    b = a % p
    e = p - 2
    while e:
        if e & 1:
            res = res * b % p
        b = b * b % p
        e >>= 1
    return res


def batched_inverse(mats, p):
    """Inverse mod p of a stack (N, n, n); pivots must be nonzero at all points."""
    N, n, _ = mats.shape
    a = np.concatenate([mats % p, np.broadcast_to(np.eye(n, dtype=np.int64), (N, n, n))], axis=2).copy()
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[:, i, k].all():
                piv = i
                break
        if piv is None:
            raise MixedZeroError("no pivot that is nonzero at every point")
        if piv != k:
            a[:, [k, piv]] = a[:, [piv, k]]
        a[:, k, :] = a[:, k, :] * inverse_mod(a[:, k, k].copy(), p)[:, None] % p
        f = a[:, :, k].copy()
        f[:, k] = 0
        a = (a - f[:, :, None] * a[:, k, None, :] % p) % p
    return a[:, :, n:]


def batched_matmul(x, y, p):
    """Stacked product mod p without int64 overflow."""
    n = x.shape[2]
    out = np.zeros((x.shape[0], x.shape[1], y.shape[2]), dtype=np.int64)
    for k in range(n):
        out = (out + x[:, :, k, None] * y[:, None, k, :]) % p
    return out
