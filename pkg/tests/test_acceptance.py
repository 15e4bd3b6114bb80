"""Exit criteria for the package.  Each test records one PASS/FAIL line,
printed in the ``acceptance criteria`` section of the pytest summary."""

import json
import random
import time
from fractions import Fraction

import pytest

from prunebench.bitcase import prune, verify_prefix_lemmas
from prunebench.cli import main
from prunebench.efficiency import (
    SolutionSet,
    enumerate_valid_sets,
    is_valid,
    par_number,
    run_efficiency,
)
from prunebench.prunegraph import (
    PROPOSITIONS,
    build_joined,
    count_paths,
    max_weight_path,
    minimal_f,
    path_to_solution_set,
    run_to_path,
    verify_structure,
)
from reference import prune_str


def test_c01_pruning_goldens(criterion):
    start = time.perf_counter()
    goldens = prune(23, 1) == 15 and prune(23, 2) == 0
    agree = all(prune(m, ell) == prune_str(m, ell)
                for ell in (1, 2, 3) for m in range(1, 2**16))
    elapsed = time.perf_counter() - start
    criterion(1, f"P_1(23)=15, P_2(23)=0, bitwise == string reference on 2^16 x 3 "
                 f"({elapsed:.2f}s)", goldens and agree and elapsed < 1.0)


def test_c02_worked_examples(criterion):
    s = SolutionSet.of(3, [6, 7])
    e1, e2 = run_efficiency(3, 1, s), run_efficiency(3, 2, s)
    ok = ((e1.R, e1.C, e1.trace) == (2, 4, (7, 6, 5, 3))
          and (e2.R, e2.C, e2.trace) == (2, 3, (7, 6, 5)))
    criterion(2, "E_1({6,7})=(2,4) trace 7,6,5,3; E_2({6,7})=(2,3) trace 7,6,5", ok)


def test_c03_theorem_sweep(criterion):
    start = time.perf_counter()
    bad = []
    for ell in (1, 2):
        for n in range(2, 17):
            at, below = (-n, -(n + 1)) if ell == 1 else (-1, -2)
            top = 2**n - 1
            g = build_joined(n, ell, at)
            if max_weight_path(g, 0, top).weight != 0:
                bad.append((ell, n, "at"))
            if not max_weight_path(g.with_blue_weight(below), 0, top).weight < 0:
                bad.append((ell, n, "below"))
    elapsed = time.perf_counter() - start
    criterion(3, f"max weight 0 -> 2^n-1 is 0 at f, < 0 at f+1, 2<=n<=16 ({elapsed:.2f}s)",
              not bad and elapsed < 5.0)


@pytest.fixture(scope="module")
def valid_sets():
    return {(n, ell): list(enumerate_valid_sets(n, ell)) for n in (2, 3, 4) for ell in (1, 2)}


def test_c04_bruteforce_bounds(criterion):
    start = time.perf_counter()
    ok = True
    for n in (2, 3, 4):
        for ell in (1, 2):
            found = list(enumerate_valid_sets(n, ell))
            best = max(out.ratio for _, out in found)
            ok &= best == (Fraction(n + 1) if ell == 1 else Fraction(2))
            extra = n if ell == 1 else 1
            ok &= all(out.C - out.R <= extra * len(s) for s, out in found)
    elapsed = time.perf_counter() - start
    criterion(4, f"max C/R = n+1 (ell=1), 2 (ell=2); C-R <= n|S| / |S|, n=2..4 "
                 f"({elapsed:.2f}s)", ok and elapsed < 10.0)


def test_c05_top_case_required(criterion, valid_sets):
    contains_top = all(2**n - 1 in s for (n, _), found in valid_sets.items() for s, _ in found)
    rng = random.Random(2024)
    invalid = True
    for n in (8, 12):
        top = 2**n - 1
        for _ in range(10_000):
            mask = 0
            while not mask:
                mask = rng.getrandbits(top) & ~1  # members 1..top-1
            invalid &= not is_valid(n, rng.choice((1, 2)), SolutionSet(n, mask))
    criterion(5, "every valid set contains 2^n-1; 2x10,000 random sets without it invalid",
              contains_top and invalid)


def test_c06_bijection(criterion, valid_sets):
    ok = True
    counts = []
    for (n, ell), found in valid_sets.items():
        g = build_joined(n, ell, -1, origin_blue=True)
        paths = count_paths(g, 0, 2**n - 1)
        counts.append(f"n={n},ell={ell}:{paths}")
        ok &= paths == len(found)
        f = n + 1 if ell == 1 else 2
        for s, out in found:
            path = run_to_path(out, ell)
            ok &= path_to_solution_set(path, n, ell) == s
            ok &= path.weight(-(f - 1)) == par_number(out, f).p
    criterion(6, "paths == valid sets, run<->path identity, weight == par "
                 f"({' '.join(counts)})", ok)


def test_c07_structure(criterion):
    start = time.perf_counter()
    failed = [(ell, name, k)
              for (ell, name), (k_min, _) in PROPOSITIONS.items()
              for k in range(k_min, 13)
              if not verify_structure(k, ell, name).passed]
    elapsed = time.perf_counter() - start
    criterion(7, f"{len(PROPOSITIONS)} structure propositions, k up to 12 ({elapsed:.2f}s)",
              not failed and elapsed < 5.0)


def test_c08_prefix_lemmas(criterion):
    report = verify_prefix_lemmas(16)
    from prunebench.bitcase import PREFIX_LEMMAS

    lemma4_k4 = list(next(l for l in PREFIX_LEMMAS if l.prefix == "10").interval(4))
    criterion(8, "prefix lemmas exhaustive for k <= 16; leading-10 at k=4 is {8..11}",
              all(c.passed for c in report) and lemma4_k4 == [8, 9, 10, 11])


def test_c09_minimal_f(criterion):
    got = {(n, ell): minimal_f(n, ell, 64) for n in range(2, 13) for ell in (1, 2)}
    ok = all(f == (n + 1 if ell == 1 else 2) for (n, ell), f in got.items())
    criterion(9, "minimal_f = n+1 (ell=1) and 2 (ell=2) for 2 <= n <= 12", ok)


CLI_COMMANDS = [
    ["prune", "23", "--ell", "1"],
    ["prune", "23", "--ell", "2", "--format", "json"],
    ["run", "-n", "3", "--ell", "1", "-s", "6,7"],
    ["run", "-n", "4", "--ell", "2", "-s", "15,14,12", "--format", "json"],
    ["enumerate", "-n", "4", "--ell", "1", "--format", "csv"],
    ["enumerate", "-n", "4", "--ell", "2", "--format", "json"],
    ["verify", "all"],
    ["verify", "bijection", "--format", "json"],
    ["graph", "--joined", "4", "--ell", "2", "--blue", "-1"],
    ["graph", "--box", "6", "--which", "3", "--ell", "2", "--format", "json"],
    ["minf", "-n", "6", "--ell", "1"],
    ["minf", "-n", "4", "--ell", "3", "--format", "csv"],
]


def _strip_timing(text):
    try:
        data = json.loads(text)
    except ValueError:
        return text
    data.pop("duration_ms", None)
    return json.dumps(data, sort_keys=True)


def test_c10_cli_determinism(criterion, capsys):
    diffs = []
    for argv in CLI_COMMANDS:
        outs = []
        for jobs in ("1", "8", "1"):
            code = main([*argv, "--jobs", jobs])
            outs.append((code, _strip_timing(capsys.readouterr().out)))
        if len(set(outs)) != 1 or outs[0][0] != 0:
            diffs.append(" ".join(argv))
    criterion(10, f"{len(CLI_COMMANDS)} CLI commands byte-identical at --jobs 1 and 8"
                  + (f"; differing: {diffs}" if diffs else ""), not diffs)
