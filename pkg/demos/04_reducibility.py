# Where the representation becomes reducible, and where the algebra stops being semisimple.
from bmw_e6.field import format_rf, parse
from bmw_e6.reducibility import (SPECIAL_VALUES, conjugate_elements, reducibility_report,
                                 semisimplicity_values, sum_S, t_value)
from bmw_e6.rep import build_rep

rep, _ = build_rep()
conj = conjugate_elements(rep)
S = sum_S(conj)
print("nonzero entries of S:", S.nnz())

# a conjugate as a word in the generators
x = conj[-1]
print(x.name, "=", x.defining_word)

# rank, kernel and invariance of the kernel at the five special values
report = reducibility_report(rep, conjugates=conj, S=S)
print(f"{'l':8} {'t':8} rank kernel invariant")
for row in report.rows:
    print(f"{row.assignment:8} {row.t_value:8} {row.rank:4} {row.kernel_dim:6} {row.invariant}")

# t = r^3 / l translates each value of l into the other parametrisation
for v in SPECIAL_VALUES:
    print(f"l = {v:7} -> t = {format_rf(t_value(parse(v)))}")

print("not semisimple at l in", [format_rf(v) for v in semisimplicity_values()])
