"""The BMW presentation of type E6 as data, and an exact relation checker.

A word is a tuple of letters ``(symbol, i)`` with symbol ``g``, ``ginv`` or
``e``.  Letters multiply left to right, so ``g1 g2 e1`` is the matrix
product G1 * G2 * E1.  A side of a relation is a list of (coefficient, word)
terms; the empty word is the identity.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import json

from .field import DELTA, L, M, ONE, as_rational, format_rf, parse
from .linalg import DimensionError, Matrix
from .roots import E6

PRESENTATION_FORMAT = "bmw-presentation"
PRESENTATION_VERSION = 1

KINDS = ("A1", "A2", "P", "DL1", "DL2", "I", "MA", "R", "EE")


def word(text):
    """Parse 'g1 g2^-1 e3' into a tuple of letters."""
    letters = []
    for tok in text.split():
        inverse = tok.endswith("^-1")
        if inverse:
            tok = tok[:-3]
        sym, idx = tok[0], int(tok[1:])
        if sym not in "ge" or (inverse and sym != "g"):
            raise ValueError(f"bad letter {tok!r}")
        letters.append(("ginv" if inverse else sym, idx))
    return tuple(letters)


def word_text(w):
    out = []
    for sym, i in w:
        out.append(f"g{i}^-1" if sym == "ginv" else f"{sym}{i}")
    return " ".join(out) if out else "1"


@dataclass(frozen=True)
class RelationInstance:
    kind: str
    nodes: tuple
    left: tuple
    right: tuple

    def describe(self):
        def side(terms):
            if not terms:
                return "0"
            parts = []
            for c, w in terms:
                c = as_rational(c)
                if c == ONE:
                    parts.append(word_text(w))
                else:
                    parts.append(f"({format_rf(c)}) {word_text(w)}")
            return " + ".join(parts)
        return f"{side(self.left)} = {side(self.right)}"


def _t(c, text):
    return (as_rational(c), word(text))


def relation_instances(diagram=E6):
    """Every defining and derived relation instance, in a fixed order."""
    out = []
    nodes = diagram.nodes
    for i, j in diagram.non_edges():
        out.append(RelationInstance("A1", (i, j), (_t(1, f"g{i} g{j}"),), (_t(1, f"g{j} g{i}"),)))
    for i, j in diagram.edges:
        out.append(RelationInstance("A2", (i, j), (_t(1, f"g{i} g{j} g{i}"),),
                                    (_t(1, f"g{j} g{i} g{j}"),)))
    for i in nodes:
        # e_i = (l/m) (g_i^2 + m g_i - 1)
        out.append(RelationInstance("P", (i,), (_t(1, f"e{i}"),),
                                    (_t(L / M, f"g{i} g{i}"), _t(L, f"g{i}"), _t(-L / M, ""))))
    for i in nodes:
        out.append(RelationInstance("DL1", (i,), (_t(1, f"g{i} e{i}"),), (_t(1 / L, f"e{i}"),)))
    for i, j in diagram.ordered_edges():
        out.append(RelationInstance("DL2", (i, j), (_t(1, f"e{i} g{j} e{i}"),), (_t(L, f"e{i}"),)))
    for i in nodes:
        out.append(RelationInstance("I", (i,), (_t(1, f"e{i} e{i}"),), (_t(DELTA, f"e{i}"),)))
    for i, j in diagram.ordered_edges():
        out.append(RelationInstance("MA", (i, j), (_t(1, f"g{i} g{j} e{i}"),), (_t(1, f"e{j} e{i}"),)))
        out.append(RelationInstance("MA", (i, j), (_t(1, f"e{j} e{i}"),), (_t(1, f"e{j} g{i} g{j}"),)))
    for i, j in diagram.ordered_edges():
        out.append(RelationInstance("R", (i, j), (_t(1, f"e{i} e{j} e{i}"),), (_t(1, f"e{i}"),)))
    for i, j in diagram.non_edges():
        out.append(RelationInstance("EE", (i, j), (_t(1, f"e{i} e{j}"),), ()))
    return out


class MatrixFamily:
    """Explicit matrices for the letters g_i and e_i.

    Inverses are g_i^-1 = g_i + m - m e_i, which holds whenever (P) and (DL1)
    do; no matrix is ever inverted by elimination.
    """

    def __init__(self, g, e, labels=None):
        self.g = dict(g)
        self.e = dict(e)
        dims = {m.n for m in list(self.g.values()) + list(self.e.values())}
        if len(dims) != 1:
            raise DimensionError(f"generator matrices have dimensions {sorted(dims)}")
        self.n = dims.pop()
        self.labels = labels
        self._inv = {}

    def letter(self, sym, i):
        if sym == "g":
            return self.g[i]
        if sym == "e":
            return self.e[i]
        if i not in self._inv:
            n = self.n
            self._inv[i] = self.g[i] + Matrix.identity(n).scale(M) - self.e[i].scale(M)
        return self._inv[i]

    def word_matrix(self, w):
        if not w:
            return Matrix.identity(self.n)
        out = self.letter(*w[0])
        for sym, i in w[1:]:
            out = out * self.letter(sym, i)
        return out

    def combination(self, terms):
        total = Matrix(self.n)
        for c, w in terms:
            total = total + self.word_matrix(w).scale(as_rational(c))
        return total

    def apply_word(self, w, vec):
        """Word applied to a sparse vector, rightmost letter first."""
        for sym, i in reversed(w):
            vec = self.letter(sym, i).apply(vec)
        return vec


@dataclass
class InstanceResult:
    instance: RelationInstance
    passed: bool
    row: object = None
    col: object = None
    left_value: object = None
    right_value: object = None


@dataclass
class RelationReport:
    results: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def counts(self):
        out = {}
        for r in self.results:
            ok, total = out.get(r.instance.kind, (0, 0))
            out[r.instance.kind] = (ok + r.passed, total + 1)
        return out

    def to_dict(self):
        rows = []
        for r in self.results:
            d = {"kind": r.instance.kind, "nodes": list(r.instance.nodes),
                 "relation": r.instance.describe(), "passed": r.passed}
            if not r.passed:
                d.update(row=str(r.row), col=str(r.col),
                         left=format_rf(as_rational(r.left_value)),
                         right=format_rf(as_rational(r.right_value)))
            rows.append(d)
        return {"passed": self.passed, "instances": rows}


def check_instance(family, inst):
    left = family.combination(inst.left)
    right = family.combination(inst.right)
    diff = left.first_difference(right)
    if diff is None:
        return InstanceResult(inst, True)
    i, j, a, b = diff
    labels = family.labels
    row = labels[i] if labels else i
    col = labels[j] if labels else j
    return InstanceResult(inst, False, row, col, a, b)


def verify_representation(family, instances=None, threads=1):
    """Check every relation instance exactly; results come back in instance order."""
    if instances is None:
        instances = relation_instances()
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(lambda inst: check_instance(family, inst), instances))
    else:
        results = [check_instance(family, inst) for inst in instances]
    return RelationReport(results)


def cubic_check(family, i):
    """(g_i - r)(g_i + 1/r)(g_i - 1/l) = 0 as a matrix identity."""
    from .field import R
    g = family.g[i]
    n = family.n
    eye = Matrix.identity(n)
    prod = (g - eye.scale(R)) * (g + eye.scale(1 / R)) * (g - eye.scale(1 / L))
    return prod.is_zero()


# ---------------------------------------------------------- presentation file

def presentation_to_json(instances=None, diagram=E6):
    if instances is None:
        instances = relation_instances(diagram)

    def side(terms):
        return [{"coeff": format_rf(as_rational(c)), "word": word_text(w)} for c, w in terms]

    data = {
        "format": PRESENTATION_FORMAT,
        "version": PRESENTATION_VERSION,
        "nodes": list(diagram.nodes),
        "edges": [list(e) for e in diagram.edges],
        "generators": [f"{s}{i}" for s in "ge" for i in diagram.nodes],
        "scalars": {"m": format_rf(M), "delta": format_rf(DELTA)},
        "relations": [{"kind": inst.kind, "nodes": list(inst.nodes),
                       "left": side(inst.left), "right": side(inst.right)}
                      for inst in instances],
    }
    return json.dumps(data, indent=1, sort_keys=True)


def load_presentation(text):
    data = json.loads(text)
    if data.get("format") != PRESENTATION_FORMAT:
        raise ValueError("not a presentation file")
    if data.get("version") != PRESENTATION_VERSION:
        raise ValueError(f"unsupported presentation version {data.get('version')}")

    def side(terms):
        return tuple((parse(t["coeff"]), word(t["word"]) if t["word"] != "1" else ())
                     for t in terms)

    return [RelationInstance(r["kind"], tuple(r["nodes"]), side(r["left"]), side(r["right"]))
            for r in data["relations"]]
