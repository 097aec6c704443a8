"""Acceptance criteria 1-8, each timed against its budget.

Every criterion logs a single PASS/FAIL line; the lines are printed as the
tests run (visible with ``-s``) and again in the pytest terminal summary.
Run directly with ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from itertools import product
from math import gcd

import pytest

import oracles
from strategies import geodesic_factor, sample_sd_conical_root
from raag import (
    DefiningGraph,
    GroupElement,
    QuasiRootParams,
    TheoremViolation,
    are_conjugate_cyclically_reduced,
    check_all_pairs,
    conical_conjugate,
    cyclically_reduce,
    extract_nth_roots,
    find_quasi_roots,
    generate_instance,
    identity,
    is_cyclically_reduced,
    is_geodesic,
    is_non_split,
    is_pyramidal,
    is_sd_conical,
    is_strongly_non_split,
    normal_form,
    parse_word,
    path_graph,
    starting_generators,
)
from raag.sampling import random_connected_graph, random_element
from raag.seqwords import ConclusionFailed, InconsistentPeriods, match_word_quasiroots, merge_periods

P3, P4, P5 = path_graph(3), path_graph(4), path_graph(5)

# largest root set seen by any extract_nth_roots call made here (criterion 8)
_ROOT_COUNTS: list[int] = []


def _roots(m, n):
    found = extract_nth_roots(m, n)
    _ROOT_COUNTS.append(len(found))
    return found


def _criterion(log, number, title, limit, body):
    start = time.perf_counter()
    try:
        ok, detail = body()
    except AssertionError as exc:
        ok, detail = False, f"assertion: {exc}"
    elapsed = time.perf_counter() - start
    in_time = limit is None or elapsed < limit
    budget = f"limit {limit}s" if limit is not None else "no time limit"
    verdict = "PASS" if ok and in_time else "FAIL"
    line = f"criterion {number} {title}: {verdict} ({elapsed:.2f}s, {budget}) {detail}"
    log[number] = line
    print(line)
    assert ok, line
    assert in_time, line


def _el(text, graph=P5):
    return GroupElement(graph, parse_word(text, graph))


# -- 1 ------------------------------------------------------------------------


def _fixtures():
    checks = {
        "g1 split": not is_non_split(_el("v2 v3 v5^-2")),
        "g2 non-split": is_non_split(_el("v2 v3")),
        "g2 not strongly non-split": not is_strongly_non_split(_el("v2 v3")),
        "g3 strongly non-split": is_strongly_non_split(_el("v2 v3 v4")),
        "sigma": normal_form(_el("v2 v4^-1 v3^-1 v5"), P5.default_order()) == parse_word("v4^-1 v5 v2 v3^-1"),
        "S(g)": starting_generators(_el("v2 v4^-1 v3^-1 v5")) == {"v2", "v4"},
    }
    for src, pyr, sd in (("v2 v3^-1 v4^-1 v5", True, True), ("v4 v5", True, False), ("v2 v1 v3 v4", False, True)):
        checks[f"pyramidal {src}"] = is_pyramidal(_el(src)) is pyr
        checks[f"SD-conical {src}"] = is_sd_conical(_el(src)) is sd
    bad = [k for k, v in checks.items() if not v]
    return not bad, f"{len(checks) - len(bad)}/{len(checks)} fixtures match" + (f"; wrong: {bad}" if bad else "")


def test_criterion_1_worked_example_fixtures(acceptance_log):
    _criterion(acceptance_log, 1, "worked-example fixtures", 1, _fixtures)


# -- 2 ------------------------------------------------------------------------


def _cyclic_reduction_equivalence():
    total = disagreements = 0
    for graph in (P3, P4):
        for g in {GroupElement(graph, w) for w in oracles.reduced_words(graph, 4)}:
            conds = oracles.cyclic_reduction_conditions(g, radius=4)
            conds["library"] = is_cyclically_reduced(g)
            total += 1
            if len(set(conds.values())) != 1:
                disagreements += 1
            if g:
                for n in (2, 3):
                    _roots(g ** n, n)
    return disagreements == 0, f"{total} elements, {disagreements} disagreements"


def test_criterion_2_cyclic_reduction_equivalence(acceptance_log):
    _criterion(acceptance_log, 2, "cyclic-reduction equivalences", 120, _cyclic_reduction_equivalence)


# -- 3 ------------------------------------------------------------------------


def _conical_conjugates():
    rng = random.Random(2024)
    failures = []
    samples = 0
    while samples < 1000:
        graph = random_connected_graph(rng, rng.randint(2, 6))
        g = random_element(rng, graph, rng.randint(1, 6))
        if not (is_non_split(g) and is_cyclically_reduced(g)):
            continue
        samples += 1
        v0 = rng.choice(sorted(g.support))
        r = conical_conjugate(g, v0)
        bad = r.check(g)
        n = len(graph)
        pk = r.p ** (n - r.k)
        if r.k > n - 1:
            bad.append("k <= |V|-1")
        if g ** n != r.a * pk * r.b or not is_geodesic([r.a, pk, r.b]):
            bad.append("g^|V| = a p^(|V|-k) b geodesic")
        if bad:
            failures.append((str(g), v0, bad))
    return not failures, f"{samples} samples, {len(failures)} failures" + (f"; first {failures[0]}" if failures else "")


def test_criterion_3_conical_conjugate(acceptance_log):
    _criterion(acceptance_log, 3, "conical conjugates", 60, _conical_conjugates)


# -- 4 ------------------------------------------------------------------------


def _nf_concatenation():
    rng = random.Random(77)
    samples = failures = 0
    while samples < 1000:
        graph, order, g = sample_sd_conical_root(rng)
        n = rng.randint(2, 4)
        gn = g ** n
        a = geodesic_factor(rng, graph, rng.randint(0, 5), right=gn)
        if a is None:
            continue
        b = geodesic_factor(rng, graph, rng.randint(0, 5), left=a * gn)
        if b is None:
            continue
        samples += 1
        lhs = normal_form(a * gn * b, order)
        rhs = normal_form(a, order) + normal_form(g, order) * (n - 1) + normal_form(g * b, order)
        failures += lhs != rhs
    return failures == 0, f"{samples} samples, {failures} failures"


def test_criterion_4_normal_form_concatenation(acceptance_log):
    _criterion(acceptance_log, 4, "normal-form concatenation", 60, _nf_concatenation)


# -- 5 ------------------------------------------------------------------------


def _fine_wilf():
    merge_cases = merge_bad = 0
    for p in range(1, 12):
        for q in range(1, 13 - p):
            for seed in product("abc", repeat=p):
                w = tuple(seed[i % p] for i in range(p + q))
                merge_cases += 1
                if oracles.has_period(w, q):
                    d = gcd(p, q)
                    try:
                        ok = merge_periods(p, q, w) == d and oracles.has_period(w, d)
                    except InconsistentPeriods:
                        ok = False
                else:
                    try:
                        merge_periods(p, q, w)
                        ok = False
                    except InconsistentPeriods:
                        ok = True
                merge_bad += not ok

    match_cases = match_bad = 0
    for n in range(1, 15):
        for letters in product("ab", repeat=n):
            w = tuple((x, 1) for x in letters)
            decs = oracles.word_decompositions(w)
            for d1 in decs:
                for d2 in decs:
                    A = max(len(d1[0]), len(d2[0]))
                    B = max(len(d1[3]), len(d2[3]))
                    if n - (A + B) < 2 * max(len(d1[1]), len(d2[1])):
                        continue
                    match_cases += 1
                    try:
                        match_word_quasiroots(w, d1, d2, A, B)
                    except ConclusionFailed:
                        match_bad += 1
    ok = merge_bad == 0 and match_bad == 0
    return ok, (f"merge_periods {merge_cases} windows, {merge_bad} disagreements; "
                f"matching {match_cases} pairs, {match_bad} conclusion failures")


def test_criterion_5_fine_wilf(acceptance_log):
    _criterion(acceptance_log, 5, "periodicity suite", 120, _fine_wilf)


# -- 6 ------------------------------------------------------------------------


def _harness():
    violations = missing = checked = 0
    for seed in range(500):
        inst = generate_instance(seed)
        found = find_quasi_roots(inst.params, inst.h)
        if inst.planted.key() not in {d.key() for d in found}:
            missing += 1
        try:
            reports = check_all_pairs(inst.params, found)
        except TheoremViolation:
            violations += 1
            continue
        checked += len(reports)
        if not all(r.conclusions_hold for r in reports):
            violations += 1
        p = inst.planted
        _roots(p.g ** p.n, p.n)
    ok = violations == 0 and missing == 0
    return ok, f"500 instances, {checked} uniqueness checks, {violations} violations, {missing} planted roots missed"


def test_criterion_6_uniqueness_harness(acceptance_log):
    _criterion(acceptance_log, 6, "uniqueness harness", 600, _harness)


# -- 7 ------------------------------------------------------------------------


def _witnesses():
    h = _el("v2^3 v3^3 v5") ** 5
    roots = {d.g for d in find_quasi_roots(QuasiRootParams("1/7", 2), h)}
    g1, g2 = _el("v2^3 v3^3 v5"), _el("v2^3 v3^3")
    a_ok = g1 in roots and g2 in roots and not are_conjugate_cyclically_reduced(g1, g2)

    edge = DefiningGraph(["v1", "v2"], [("v1", "v2")])
    h2 = GroupElement(edge, "v1^5 v2^5")
    roots2 = {d.g for d in find_quasi_roots(QuasiRootParams("1/2", 2, diagnostic=True), h2)}
    v1, v2 = GroupElement(edge, "v1"), GroupElement(edge, "v2")
    b_ok = v1 in roots2 and v2 in roots2 and not are_conjugate_cyclically_reduced(v1, v2)
    return a_ok and b_ok, f"(a) split witness {'reproduced' if a_ok else 'NOT reproduced'}, " \
                          f"(b) lambda=1/2 witness {'reproduced' if b_ok else 'NOT reproduced'}"


def test_criterion_7_non_uniqueness_witnesses(acceptance_log):
    _criterion(acceptance_log, 7, "non-uniqueness witnesses", 30, _witnesses)


# -- 8 ------------------------------------------------------------------------


def _root_uniqueness():
    for graph in (P3, P4):
        for m in {GroupElement(graph, w) for w in oracles.reduced_words(graph, 4)}:
            for n in (2, 3, 4):
                _roots(m, n)
    rng = random.Random(8)
    exact = 0
    for _ in range(500):
        graph = random_connected_graph(rng, rng.randint(2, 6))
        g = cyclically_reduce(random_element(rng, graph, rng.randint(1, 5))).h
        if not g:
            continue
        n = rng.randint(2, 5)
        exact += _roots(g ** n, n) == [g]
    worst = max(_ROOT_COUNTS)
    return worst <= 1, f"{len(_ROOT_COUNTS)} root extractions, largest root set {worst}, {exact} powers recovered exactly"


def test_criterion_8_root_uniqueness(acceptance_log):
    _criterion(acceptance_log, 8, "root uniqueness", None, _root_uniqueness)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
