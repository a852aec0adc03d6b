# Building the generator matrices and checking them.
import time

from bmw_e6.field import format_rf
from bmw_e6.presentation import verify_representation
from bmw_e6.rep import (assemble_partial, build_rep, fixture_checks, structural_checks,
                        xi_checks)
from bmw_e6.roots import INDEX, LABELS, label

# columns stated explicitly versus columns the completion has to supply
partial = assemble_partial()
print("pinned columns:", len(partial.pinned))
print("columns left to complete:", len(partial.unknown))
for i in range(1, 7):
    print(f"  g{i}: {sum(1 for k in partial.unknown if k[0] == i)} unknown")

# the packaged cache holds the completed matrices; pass cache="somewhere.json" to rebuild
start = time.time()
rep, source = build_rep()
print("loaded from", source, f"in {time.time() - start:.2f}s")

# one column written out: g2 on hw[4,5], which no explicit rule fixes
col = rep.g[2].cols[INDEX[label("hw[4,5]")]]
print("g2 hw[4,5] =")
for k in sorted(col):
    print(f"   ({format_rf(col[k])}) {LABELS[k]}")
print("provenance:", rep.provenance[(2, INDEX[label("hw[4,5]")])])

# every relation instance as an exact matrix identity
report = verify_representation(rep)
for kind, (ok, total) in report.counts().items():
    print(f"{kind:4} {ok}/{total}")

fix = fixture_checks(rep)
print("fixtures:", sum(r.passed for r in fix.results), "of", len(fix.results))
print("xi:", xi_checks(rep))
print("structure all pass:", all(structural_checks(rep).values()))
