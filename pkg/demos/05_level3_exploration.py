"""
Pruning at the third zero
=========================

Nothing is proven for ``ell >= 3``, but the same machinery can search for
the worst ratio.  This prints what the search finds.
"""

from prunebench import max_ratio_bruteforce, minimal_f

for n in range(2, 11):
    print(f"n={n:>2} ell=3 minimal f = {minimal_f(n, 3, 64)}")

for n in (2, 3, 4):
    ratio, witness = max_ratio_bruteforce(n, 3)
    print(f"n={n} ell=3 exhaustive max C/R = {ratio} at {witness}")
