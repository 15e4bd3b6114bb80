"""
Pruning a sign case
===================

A case index is an integer read in binary.  ``prune(m, ell)`` clears every
bit to the right of the ell-th zero (counting from the right, with as many
leading zeros as needed) and subtracts one.
"""

from prunebench import prune
from prunebench.bitcase import binary

# 23 = 10111.  The first zero sits at bit 3, so the three ones to its right
# are cleared: 10000 - 1 = 01111 = 15.  The second zero only exists in the
# padding, so everything is cleared and the result clamps to 0.
for ell in (1, 2):
    print(f"prune(23, {ell}) = {prune(23, ell):>2}   ({binary(23, 5)} -> "
          f"{binary(prune(23, ell), 5)})")

# All-ones indices always collapse to 0: there is no zero to stop at.
print([prune(2**k - 1, 1) for k in range(1, 8)])

# A larger ell prunes at least as far as a smaller one.
row = lambda m: [prune(m, ell) for ell in (1, 2, 3)]  # noqa: E731
for m in (4, 6, 13, 40, 100):
    print(f"{m:>4} {binary(m, 7)}  ->", row(m))
