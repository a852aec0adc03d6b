# The 36 positive roots of E6 and the basis vectors named after them.
from bmw_e6.roots import E6, LABELS, decoration, positive_roots, root_closure, root_for_label
from bmw_e6.rep import basis_words
from bmw_e6.presentation import word_text

# Dynkin diagram: chain 1-3-4-5-6 with node 2 hanging off node 4
print("edges:", E6.edges)

roots = positive_roots()
print("number of positive roots:", len(roots))
print("closure under reflections agrees:", set(roots) == root_closure())

# tallest root first
highest = max(roots, key=lambda b: b.height)
print("highest root:", highest, "height", highest.height)

# each basis vector, its root, the family read off the root, and the word making it from w[5,6]
words = basis_words()
for lab in LABELS:
    beta = root_for_label(lab)
    print(f"{lab.name:10} {str(beta):16} {decoration(beta).name:14} {word_text(words[lab])} w[5,6]")
