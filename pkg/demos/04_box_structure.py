"""
Self-similar blocks
===================

The block ``G_k`` covers cases ``2**(k-1) - 1`` to ``2**k - 1``.  It splits
into boxes that reappear, shifted, inside ``G_{k+1}``; that recursion is
what keeps the heaviest path at zero for every k.
"""

from prunebench import box_bounds, build_gk, induced_box, verify_structure
from prunebench.prunegraph import propositions, PROPOSITIONS

for ell, k in ((1, 4), (2, 4), (2, 5)):
    b = box_bounds(k, ell)
    print(f"ell={ell} k={k}:", {name: f"{lo}..{hi}" for name, (lo, hi) in b.bounds.items()})

g6 = build_gk(6, 2, -1)
b4 = induced_box(g6, box_bounds(6, 2), 4)
print("B4 of G6 red edges:", sorted((e.src, e.dst) for e in b4.edges if e.color.value == "red"))

# Every structural claim, checked by exact edge-multiset comparison.
for ell in (1, 2):
    for name in propositions(ell):
        k_min, _ = PROPOSITIONS[(ell, name)]
        results = [verify_structure(k, ell, name).passed for k in range(k_min, 11)]
        print(f"ell={ell} {name:<14} k={k_min}..10  all pass: {all(results)}")
