"""
Runs as paths
=============

Reversing a run's trace gives a path from 0 to ``2**n - 1``.  Blue edges
(m-1 -> m, case m solved) weigh ``-(f - 1)``; red edges (prune(m) -> m,
case m pruned) weigh +1.  The path weight is the par number ``C - f*R``, so
the heaviest path being 0 means the worst ratio C/R is exactly f.
"""

from prunebench import (
    SolutionSet,
    build_joined,
    count_paths,
    max_weight_path,
    minimal_f,
    run_efficiency,
    run_to_path,
    to_dot,
)

out = run_efficiency(3, 1, SolutionSet.of(3, [6, 7]))
path = run_to_path(out, 1)
print("path", path.nodes, [c.value for c in path.colors], "weight at f=4:", path.weight(-3))

for ell, f in ((1, 6), (2, 2)):
    g = build_joined(5, ell, -(f - 1))
    best = max_weight_path(g, 0, 31)
    print(f"ell={ell} n=5 f={f}: heaviest weight {best.weight}, witness {best.path.nodes}")

# One more unit of blue weight and every path goes negative.
print(max_weight_path(build_joined(5, 1, -6), 0, 31).weight)

# The graph with the extra blue 0 -> 1 edge has one path per valid set.
print("paths n=4 ell=1:", count_paths(build_joined(4, 1, -1, origin_blue=True), 0, 15))

# The smallest f that keeps every path nonpositive.
print([minimal_f(n, 1, 64) for n in range(2, 10)])
print([minimal_f(n, 2, 64) for n in range(2, 10)])

# DOT for the n = 3 graph; pipe to `dot -Tpng` to draw it.
print(to_dot(build_joined(3, 1, -3)))
