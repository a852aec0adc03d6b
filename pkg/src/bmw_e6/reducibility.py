"""Conjugates of the e_i, their sum S, and where S drops rank.

Each conjugate X = w e_k w^-1 has rank one, so it is kept as a pair (u, phi)
with X = u phi^T: conjugating by g replaces u by g u and phi by phi g^-1.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import hashlib

from .field import (ONE, R, Assignment, LSubstitution, as_rational, format_rf, parse,
                    r_to_minus_inverse, substitute)
from .linalg import Matrix, determinant, kernel_basis, outer, rank
from .presentation import word_text
from .roots import INDEX, LABELS, label

REPORT_VERSION = 1

# base conjugates: the e_i themselves, named by the vector spanning their image
BASE = {"w[1,2]": 1, "w[2,3]": 3, "w[3,4]": 4, "w[4,5]": 5, "w[5,6]": 6, "hw[2,3]": 2}


def _parents():
    """name -> (i, parent name) meaning X[name] = g_i X[parent] g_i^-1."""
    P = {}
    for t in range(3, 7):
        P[f"w[1,{t}]"] = (t, f"w[1,{t - 1}]")
    for i in range(2, 7):
        for j in range(i + 2, 7):
            P[f"w[{i},{j}]"] = (j, f"w[{i},{j - 1}]")
    for j in range(4, 7):
        P[f"hw[2,{j}]"] = (j, f"hw[2,{j - 1}]")
    for i in range(3, 7):
        for j in range(i + 1, 7):
            P[f"hw[{i},{j}]"] = (i, f"hw[{i - 1},{j}]")
    for s in range(3, 7):
        for t in range(s + 1, 7):
            P[f"t1w[{s},{t}]"] = (1, f"hw[{s},{t}]")
    for s in range(4, 7):
        for t in range(s + 1, 7):
            P[f"t2w[{s},{t}]"] = (3, f"t1w[{s},{t}]")
    P["t3w[5,6]"] = (4, "t2w[5,6]")
    P["tlw[5,6]"] = (2, "t3w[5,6]")
    return P


PARENTS = _parents()


@dataclass
class ConjugateElement:
    name: str              # basis label of the vector spanning the image
    conjugator: tuple      # letters w with X = w e_k w^-1
    base: int              # k
    u: dict
    phi: dict
    n: int

    @property
    def matrix(self):
        return outer(self.u, self.phi, self.n)

    @property
    def defining_word(self):
        w = list(self.conjugator)
        inv = [("ginv", i) for _, i in reversed(w)]
        return word_text(tuple(w) + (("e", self.base),) + tuple(inv))


def conjugate_elements(rep):
    """The 36 conjugates in basis order."""
    n = rep.n
    out = {}
    for name, k in BASE.items():
        e = rep.e[k]
        row = INDEX[label(name)]
        phi = {j: col[row] for j, col in enumerate(e.cols) if row in col}
        if any(set(col) - {row} for col in e.cols):
            raise ValueError(f"image of e{k} is not spanned by {name}")
        out[name] = ConjugateElement(name, (), k, {row: ONE}, phi, n)

    def build(name):
        if name in out:
            return out[name]
        i, parent = PARENTS[name]
        p = build(parent)
        u = rep.g[i].apply(p.u)
        phi = rep.letter("ginv", i).apply_left(p.phi)
        out[name] = ConjugateElement(name, (("g", i),) + p.conjugator, p.base, u, phi, n)
        return out[name]

    return [build(lab.name) for lab in LABELS]


def sum_S(conjugates):
    n = conjugates[0].n
    total = Matrix(n)
    for x in conjugates:
        total = total + x.matrix
    return total


# --------------------------------------------------------------- det(S)

DET_FACTORS = (("l - r^3", 15), ("l + r^3", 30), ("l*r^3 - 1", 20), ("1 + l*r^9", 6),
               ("l*r^21 - 1", 1))
DET_NORMALIZER = "l^36 * r^99 * (r^2 - 1)^36"


def det_target():
    out = ONE
    for f, k in DET_FACTORS:
        out = out * parse(f) ** k
    return out


@dataclass
class DetReport:
    passed: bool
    backend: str
    normalized: str
    expected: str
    factors: list          # (factor, expected exponent, multiplicity found in det(S))
    det: object = None

    def to_dict(self):
        return {"version": REPORT_VERSION, "passed": self.passed, "backend": self.backend,
                "normalizer": DET_NORMALIZER,
                "closed_form": " * ".join(f"({f})^{k}" for f, k in DET_FACTORS),
                "normalized_det": self.normalized if not self.passed else "equal to closed form",
                "factors": [{"factor": f, "exponent": k, "multiplicity": m}
                            for f, k, m in self.factors]}


class DeterminantMismatch(ArithmeticError):
    pass


def _multiplicity(poly, factor):
    """Largest k with factor^k dividing poly."""
    k = 0
    while not poly.is_zero():
        q, rem = divmod(poly, factor)
        if not rem.is_zero():
            break
        poly = q
        k += 1
    return k


def det_S_check(S, backend="bareiss", seed=0, threads=1, strict=False):
    """Compare det(S) times the normalizer with the closed form.

    With ``strict`` a mismatch raises DeterminantMismatch carrying both sides.
    """
    d = determinant(S, backend=backend, seed=seed, threads=threads)
    normalized = d * parse(DET_NORMALIZER)
    target = det_target()
    passed = normalized == target
    factors = []
    for f, k in DET_FACTORS:
        factors.append((f, k, _multiplicity(normalized._n, parse(f)._n)))
    rep = DetReport(passed, backend, format_rf(normalized), format_rf(target), factors, d)
    if strict and not passed:
        raise DeterminantMismatch(f"det(S) * {DET_NORMALIZER} = {rep.normalized}, "
                                  f"expected {rep.expected}")
    return rep


# ------------------------------------------------------ specializations

SPECIAL_VALUES = ("r^3", "-r^3", "1/r^3", "-1/r^9", "1/r^21")
EXPECTED_RANKS = dict(zip(SPECIAL_VALUES, (21, 6, 16, 30, 35)))
EXPECTED_KERNELS = dict(zip(SPECIAL_VALUES, (15, 30, 20, 6, 1)))
EXPECTED_T = dict(zip(SPECIAL_VALUES, ("1", "-1", "r^6", "-r^12", "r^24")))


def t_value(l_value):
    """The other parametrisation of the reducibility locus: t = r^3 / l."""
    return R ** 3 / as_rational(l_value)


@dataclass
class SpecializationReport:
    assignment: str
    rank: int
    kernel_dim: int
    kernel_digest: str
    invariant: bool
    annihilated: bool
    t_value: str = None
    expected_kernel_dim: int = None
    kernel: list = field(default_factory=list, repr=False)

    @property
    def passed(self):
        ok = self.rank + self.kernel_dim == 36 and self.invariant and self.annihilated
        if self.expected_kernel_dim is not None:
            ok = ok and self.kernel_dim == self.expected_kernel_dim
        return ok

    def to_dict(self):
        d = {"assignment": self.assignment, "rank": self.rank, "kernel_dim": self.kernel_dim,
             "kernel_digest": self.kernel_digest, "invariant": self.invariant,
             "annihilated": self.annihilated}
        if self.t_value is not None:
            d["t"] = self.t_value
            d["expected_kernel_dim"] = self.expected_kernel_dim
        return d


def _specializer(assignment):
    if isinstance(assignment, Assignment):
        if assignment.kind == "symbolic":
            return LSubstitution(assignment.l), "specialized"
        return (lambda x: substitute(x, assignment)), "rational"
    return LSubstitution(as_rational(assignment)), "specialized"


def _specialize(m, fn):
    return m.map(fn)


def _digest(vectors):
    h = hashlib.sha256()
    for v in vectors:
        for k in sorted(v):
            x = v[k]
            h.update(f"{k}:{format_rf(as_rational(x)) if not isinstance(x, Fraction) else x};".encode())
        h.update(b"\n")
    return h.hexdigest()[:16]


def any_nonzero_pairing(phi, v):
    total = 0
    for j, c in phi.items():
        if j in v:
            total = c * v[j] + total
    return bool(total)


def _is_zero_vec(v):
    return not any(v.values())


def specialization_report(rep, l_value, conjugates=None, S=None, check_conjugates=True):
    """Rank, kernel and invariance of ker S after substituting ``l_value``.

    ``l_value`` is an expression in r (string or RationalFunction) or an
    Assignment; numeric assignments fix both l and r.
    """
    if conjugates is None:
        conjugates = conjugate_elements(rep)
    if S is None:
        S = sum_S(conjugates)
    if isinstance(l_value, str):
        text = l_value
        l_value = parse(l_value)
    elif isinstance(l_value, Assignment) and l_value.kind == "numeric":
        text = f"l={l_value.l_value}, r={l_value.r_value}"
    else:
        text = format_rf(as_rational(l_value.l if isinstance(l_value, Assignment) else l_value))
    fn, fld = _specializer(l_value)
    Ss = _specialize(S, fn)
    rk = rank(Ss, fld)
    kern = kernel_basis(Ss, fld)
    invariant = True
    annihilated = True
    if kern:
        for i in sorted(rep.g):
            gi = _specialize(rep.g[i], fn)
            ei = _specialize(rep.e[i], fn)
            for v in kern:
                if not _is_zero_vec(Ss.apply(gi.apply(v))):
                    invariant = False
                if not _is_zero_vec(ei.apply(v)):
                    annihilated = False
        if check_conjugates:
            for x in conjugates:
                phi = {j: fn(c) for j, c in x.phi.items()}
                for v in kern:
                    if any_nonzero_pairing(phi, v):
                        annihilated = False
    report = SpecializationReport(text, rk, len(kern), _digest(kern), invariant, annihilated,
                                  kernel=list(kern))
    if not isinstance(l_value, Assignment):
        key = _special_key(l_value)
        report.t_value = format_rf(t_value(l_value))
        if key is not None:
            report.expected_kernel_dim = EXPECTED_KERNELS[key]
    return report


def _special_key(value):
    for v in SPECIAL_VALUES:
        if parse(v) == as_rational(value):
            return v
    return None


@dataclass
class ReducibilityReport:
    rows: list

    @property
    def passed(self):
        return all(r.passed and r.rank == EXPECTED_RANKS[_special_key(parse(r.assignment))]
                   for r in self.rows)

    def to_dict(self):
        return {"version": REPORT_VERSION, "passed": self.passed,
                "rows": [r.to_dict() for r in self.rows]}


def reducibility_report(rep, threads=1, conjugates=None, S=None):
    """The five values of l where S is singular, with kernel dimension and t = r^3/l."""
    if conjugates is None:
        conjugates = conjugate_elements(rep)
    if S is None:
        S = sum_S(conjugates)
    run = lambda v: specialization_report(rep, v, conjugates, S)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            rows = list(ex.map(run, SPECIAL_VALUES))
    else:
        rows = [run(v) for v in SPECIAL_VALUES]
    return ReducibilityReport(rows)


def semisimplicity_values():
    """Values of l where the algebra fails to be semisimple.

    The five reducibility values together with their images under r -> -1/r,
    in order of first appearance.
    """
    out = []
    for v in SPECIAL_VALUES:
        for x in (parse(v), r_to_minus_inverse(parse(v))):
            if x not in out:
                out.append(x)
    return out


def generic_rank(S, numeric_point=(5, 7)):
    """rank(S) over Q(l, r) and at a numeric point."""
    a = Assignment.numeric(*numeric_point)
    return rank(S, "generic"), rank(S.map(lambda x: substitute(x, a)), "rational")
