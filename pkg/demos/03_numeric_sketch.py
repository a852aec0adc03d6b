# A floating point look at S: the smallest singular values collapse on the special locus.
import numpy as np

from bmw_e6.field import Assignment, substitute
from bmw_e6.reducibility import conjugate_elements, sum_S
from bmw_e6.rep import build_rep

rep, _ = build_rep()
S = sum_S(conjugate_elements(rep))


def evaluate(M, l, r):
    a = Assignment.numeric(l, r)
    out = np.zeros((M.n, M.n))
    for j, col in enumerate(M.cols):
        for i, x in col.items():
            out[i, j] = float(substitute(x, a))
    return out


r = 1.25
for name, l in [("r^3", r ** 3), ("-r^3", -r ** 3), ("1/r^3", r ** -3), ("-1/r^9", -r ** -9),
                ("1/r^21", r ** -21), ("2 (generic)", 2.0)]:
    sv = np.linalg.svd(evaluate(S, l, r), compute_uv=False)
    rel = sv / sv[0]
    small = int(np.sum(rel < 1e-9))
    print(f"l = {name:12} near-zero singular values: {small:2}   smallest ratio {rel[-1]:.2e}")

# walking l towards r^3: the gap closes linearly
for eps in (1e-1, 1e-2, 1e-3, 1e-4):
    sv = np.linalg.svd(evaluate(S, r ** 3 + eps, r), compute_uv=False)
    print(f"l = r^3 + {eps:g}: 15th smallest ratio {sorted(sv / sv[0])[14]:.3e}")
