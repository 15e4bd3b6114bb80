"""Slow, literal reference implementations used as independent test oracles."""


def prune_str(m, ell):
    """Pruning by string surgery on the padded binary representation."""
    assert m >= 1 and ell >= 1
    digits = "0" * ell + format(m, "b")  # enough left padding for ell zeros
    seen = 0
    for i in range(len(digits) - 1, -1, -1):
        if digits[i] == "0":
            seen += 1
            if seen == ell:
                break
    cleared = digits[: i + 1] + "0" * (len(digits) - i - 1)
    return max(int(cleared, 2) - 1, 0)


def efficiency_naive(n, ell, members):
    """Counting sweep written straight from its step list, on a Python set."""
    S = set(members)
    j, R, C = 2**n - 1, 0, 0
    trace = []
    while j > 0:
        C += 1
        trace.append(j)
        if j in S:
            R += 1
            j = j - 1
        else:
            j = prune_str(j, ell)
    return R, C, trace


def paths_dfs(n, ell, blue_weight, *, origin_blue=False):
    """All 0 -> 2**n-1 paths of the run graph as (weight, colored edges).

    Edges are generated from the decrement/prune rules directly, not from
    the library's graph builders.
    """
    top = 2**n - 1
    succ = {}
    for m in range(1, top + 1):
        if m >= 2 or origin_blue:
            succ.setdefault(m - 1, []).append((m, "blue", blue_weight))
        if m < top:
            succ.setdefault(prune_str(m, ell), []).append((m, "red", 1))
    out = []

    def walk(v, weight, edges):
        if v == top:
            out.append((weight, edges))
            return
        for w, c, wt in succ.get(v, ()):
            walk(w, weight + wt, edges + ((v, w, c),))

    walk(0, 0, ())
    return out
