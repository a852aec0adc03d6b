"""The E6 root datum and the naming of the 36 basis vectors.

Nodes are numbered 1..6 with the chain 1-3-4-5-6 and node 2 attached to
node 4.  Roots are integer vectors over the simple roots.
"""

from dataclasses import dataclass
from enum import Enum

NODES = (1, 2, 3, 4, 5, 6)
EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (2, 4))


class DynkinDiagram:
    def __init__(self, nodes=NODES, edges=EDGES):
        self.nodes = tuple(nodes)
        self.edges = tuple(tuple(sorted(e)) for e in edges)
        self._adj = {i: set() for i in self.nodes}
        for a, b in self.edges:
            self._adj[a].add(b)
            self._adj[b].add(a)

    def adjacent(self, i, j):
        return j in self._adj[i]

    def neighbours(self, i):
        return sorted(self._adj[i])

    def non_edges(self):
        return [(i, j) for i in self.nodes for j in self.nodes
                if i < j and not self.adjacent(i, j)]

    def ordered_edges(self):
        return [(i, j) for i in self.nodes for j in self.nodes if self.adjacent(i, j)]


E6 = DynkinDiagram()


@dataclass(frozen=True, order=True)
class Root:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != 6:
            raise ValueError("a root has six coordinates")

    @property
    def height(self):
        return sum(self.coeffs)

    def __getitem__(self, i):
        """Coefficient of the simple root alpha_i, 1-based."""
        return self.coeffs[i - 1]

    def __add__(self, other):
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scaled(self, k):
        return Root(tuple(k * a for a in self.coeffs))

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


def simple_root(i):
    return Root(tuple(1 if k == i else 0 for k in NODES))


def pairing(i, beta, diagram=E6):
    """Cartan pairing <beta, alpha_i^vee> = 2 beta_i - sum over neighbours j of beta_j."""
    return 2 * beta[i] - sum(beta[j] for j in diagram.neighbours(i))


def reflect(i, beta, diagram=E6):
    return beta - simple_root(i).scaled(pairing(i, beta, diagram))


def root_closure(diagram=E6):
    """All positive roots, generated from the simple roots by reflections."""
    found = {simple_root(i) for i in diagram.nodes}
    frontier = list(found)
    while frontier:
        beta = frontier.pop()
        for i in diagram.nodes:
            gamma = reflect(i, beta, diagram)
            if min(gamma.coeffs) >= 0 and gamma.height > 0 and gamma not in found:
                found.add(gamma)
                frontier.append(gamma)
    return found


class Family(Enum):
    PLAIN = "w"
    HAT = "hw"
    TRI = "t1w"
    TRI_PLUS = "t2w"
    TRI_PLUS_PLUS = "t3w"
    TRI_LONG = "tlw"


@dataclass(frozen=True)
class BasisLabel:
    family: Family
    i: int
    j: int

    @property
    def name(self):
        return f"{self.family.value}[{self.i},{self.j}]"

    def __str__(self):
        return self.name


def _label(prefix, i, j):
    return BasisLabel(Family(prefix), i, j)


def _chain(*pairs):
    """Root from (node, coefficient) pairs."""
    c = [0] * 6
    for node, k in pairs:
        c[node - 1] += k
    return Root(tuple(c))


def _span(lo, hi, k=1):
    """k * (alpha_lo + ... + alpha_hi) along the chain 3-4-5-6, lo >= 3."""
    return [(n, k) for n in range(lo, hi + 1)]


def _table():
    rows = [(_label("w", 1, 2), _chain((1, 1)))]
    for t in range(3, 7):
        rows.append((_label("w", 1, t), _chain((1, 1), *_span(3, t))))
    for i in range(2, 7):
        for j in range(i + 1, 7):
            rows.append((_label("w", i, j), _chain(*_span(i + 1, j))))
    rows.append((_label("hw", 2, 3), _chain((2, 1))))
    for t in range(4, 7):
        rows.append((_label("hw", 2, t), _chain((2, 1), *_span(4, t))))
    for t in range(4, 7):
        rows.append((_label("hw", 3, t), _chain((2, 1), (3, 1), *_span(4, t))))
    for s in range(4, 7):
        for t in range(s + 1, 7):
            rows.append((_label("hw", s, t),
                         _chain((2, 1), (3, 1), *_span(4, s, 2), *_span(s + 1, t))))
    for t in range(4, 7):
        rows.append((_label("t1w", 3, t), _chain((1, 1), (2, 1), (3, 1), *_span(4, t))))
    for s in range(4, 7):
        for t in range(s + 1, 7):
            rows.append((_label("t1w", s, t),
                         _chain((1, 1), (2, 1), (3, 1), *_span(4, s, 2), *_span(s + 1, t))))
    for s in range(4, 7):
        for t in range(s + 1, 7):
            rows.append((_label("t2w", s, t),
                         _chain((1, 1), (2, 1), (3, 2), *_span(4, s, 2), *_span(s + 1, t))))
    rows.append((_label("t3w", 5, 6), _chain((1, 1), (2, 1), (3, 2), (4, 3), (5, 2), (6, 1))))
    rows.append((_label("tlw", 5, 6), _chain((1, 1), (2, 2), (3, 2), (4, 3), (5, 2), (6, 1))))
    return rows


_TABLE = _table()
LABELS = tuple(lab for lab, _ in _TABLE)
_ROOT_OF = dict(_TABLE)
_LABEL_OF = {root: lab for lab, root in _TABLE}
_BY_NAME = {lab.name: lab for lab in LABELS}
INDEX = {lab: k for k, lab in enumerate(LABELS)}


def positive_roots():
    """The 36 positive roots in the order of the basis table.

    The set is generated by reflection closure and must coincide with the
    roots named in the table.
    """
    closure = root_closure()
    roots = [root for _, root in _TABLE]
    if set(roots) != closure or len(roots) != len(closure):
        raise AssertionError("basis table does not match the positive roots")
    return roots


def labels():
    return list(LABELS)


def label(name):
    """Look up a BasisLabel by its report name, e.g. 'hw[2,3]'."""
    try:
        return _BY_NAME[name.replace(" ", "")]
    except KeyError:
        raise KeyError(f"unknown basis label {name!r}") from None


def label_for_root(beta):
    try:
        return _LABEL_OF[beta]
    except KeyError:
        raise ValueError(f"{beta} is not a positive root") from None


def root_for_label(lab):
    if isinstance(lab, str):
        lab = label(lab)
    return _ROOT_OF[lab]


def decoration(beta):
    """Family predicted from root coordinates alone."""
    a, b, c, d = beta[1], beta[2], beta[3], beta[4]
    if a == 0 and b == 1:
        return Family.HAT
    if a == 1 and b != 0:
        if b == 2:
            return Family.TRI_LONG
        if b == 1 and d == 3:
            return Family.TRI_PLUS_PLUS
        if c == 2 and d == 2:
            return Family.TRI_PLUS
        if a == b == c == 1:
            return Family.TRI
        raise ValueError(f"{beta} carries a triangle but no recognised decoration")
    return Family.PLAIN
