"""
Counting cases checked
======================

The sweep starts at the top case ``2**n - 1`` and walks down: after a case
with a solution it steps to the next case, after one without a solution it
jumps to ``prune(j, ell)``.  R counts solutions found, C counts cases
checked.  A solution set is valid when every member is found.
"""

from prunebench import (
    SolutionSet,
    enumerate_valid_sets,
    max_ratio_bruteforce,
    par_number,
    run_efficiency,
    run_prune_sweep,
)

# With an arbitrary oracle the sweep is just a loop; this is where a real
# equilibrium solver would plug in.
print(run_prune_sweep(3, 1, lambda j: j in {6, 7}))

s = SolutionSet.of(3, [6, 7])
for ell in (1, 2):
    out = run_efficiency(3, ell, s)
    f = 4 if ell == 1 else 2
    print(f"ell={ell}: R={out.R} C={out.C} trace={out.trace} "
          f"par at f={f}: {par_number(out, f).p}")

# Exhaustive search over every nonempty subset confirms the worst ratios:
# n + 1 with single-zero pruning and 2 with two-zero pruning.
for ell in (1, 2):
    for n in (2, 3, 4):
        ratio, witness = max_ratio_bruteforce(n, ell)
        count = sum(1 for _ in enumerate_valid_sets(n, ell))
        print(f"ell={ell} n={n}: {count:>5} valid sets, max C/R = {ratio} at {witness}")
