"""Acceptance criteria 1-10, each printed as a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` or through pytest,
where the lines also appear in the terminal summary.
"""

import time
from collections import Counter

import numpy as np
import pytest

from acceptance_log import record
from gnbraid.cli import run
from gnbraid.core import BraidWord, DoublePrimeGenerator, Family, GroupWord, PairLetter, gn2_generators, parse_word, prime_generators
from gnbraid.dynamics import (
    basepoints,
    collinear_events,
    concatenate,
    inverse_trajectory,
    braid_trajectory,
    linking_numbers,
    standard_generator_trajectory,
    tangent_events,
)
from gnbraid.geometry import circumcircle, precedes, tangent_circles_through
from gnbraid.maps import Phi, g_word, minimality_certificate, phi
from gnbraid.relators import iter_prime_relators, relators_pure_braid
from gnbraid.solver import equal, is_minimal, neighbors, parity_signature, reduce
from oracles import four_points_on_tangent_circle, planted_tangent_event


def _summary(output):
    return dict(kv.split("=") for kv in output.splitlines()[-1].split())


def _check_relators(target, n, sample=None):
    argv = ["check-relators", target, "--n", str(n)]
    if sample is not None:
        argv += ["--sample", str(sample)]
    return run(argv)


# --- 1 ---------------------------------------------------------------------


def criterion_1():
    start = time.perf_counter()
    r4 = _check_relators("phi", 4)
    r5 = _check_relators("phi", 5, sample=200)
    elapsed = time.perf_counter() - start
    s4, s5 = _summary(r4.output), _summary(r5.output)
    kinds5 = Counter(ln.split()[1] for ln in r5.output.splitlines()[:-1])
    all_kinds5 = {r.kind for r in iter_prime_relators(5)}
    ok = (
        r4.code == 0
        and r5.code == 0
        and int(s4["relators"]) == len(list(iter_prime_relators(4)))
        and s5["relators"] == "200"
        and set(kinds5) == all_kinds5
        and elapsed < 60
    )
    detail = f"n=4 {s4['pass']}/{s4['relators']}, n=5 sample {s5['pass']}/{s5['relators']} kinds {dict(kinds5)}, {elapsed:.1f}s"
    return ok, detail


# --- 2 ---------------------------------------------------------------------


def criterion_2():
    start = time.perf_counter()
    r = _check_relators("h", 4)
    elapsed = time.perf_counter() - start
    s = _summary(r.output)
    kinds = Counter(ln.split()[1] for ln in r.output.splitlines()[:-1])
    ok = r.code == 0 and s["fail"] == "0" and set(kinds) == {"square", "commute", "quadruple"} and elapsed < 60
    return ok, f"{s['pass']}/{s['relators']} {dict(kinds)}, {elapsed:.1f}s"


# --- 3 ---------------------------------------------------------------------


def criterion_3():
    r = _check_relators("g", 4)
    s = _summary(r.output)
    x = PairLetter
    g = g_word(parse_word("a'[1,2,3] a'[1,2,4] a'[1,3,4] a'[2,3,4]"))
    images_ok = (
        g(x(1, 2)).letters == (x(1, 4), x(1, 3), x(1, 2), x(1, 3), x(1, 4))
        and g(x(1, 3)).letters == (x(1, 4), x(1, 3), x(1, 4))
        and g(x(2, 3)).letters == (x(2, 4), x(2, 3), x(2, 4))
    )
    ok = r.code == 0 and s["fail"] == "0" and images_ok
    return ok, f"{s['pass']}/{s['relators']} relators, displayed images match: {images_ok}"


# --- 4 ---------------------------------------------------------------------


def criterion_4():
    rels = relators_pure_braid(3)
    checked = 0
    ok = True
    for rel in rels:
        ok &= equal(Phi(rel.left), Phi(rel.right))
        ok &= len(reduce(Phi(rel.left + rel.right.inverse())).word) == 0
        checked += 1
    betas = [BraidWord.of(3, (1, 2)), BraidWord.of(3, (1, 3)), BraidWord.of(3, (2, 3))]
    betas += [BraidWord.of(3, (1, 2), (2, 3)), BraidWord.of(3, (1, 3), (2, 3, -1))]
    for beta in betas:
        t = braid_trajectory(beta)
        word, report = collinear_events(concatenate(t, inverse_trajectory(t)))
        ok &= report.ok and len(reduce(phi(word)).word) == 0
    return ok, f"{checked} PB_3 relation pairs equal, {len(betas)} beta*beta^-1 traces trivial"


# --- 5 ---------------------------------------------------------------------


def _exact_collinear_root(traj, event):
    """Solve the quadratic det(q - p, r - p) = 0 on the sample segment holding the event."""
    times = traj.times
    k = int(np.searchsorted(times, event.time, side="right") - 1)
    k = min(max(k, 0), len(times) - 2)
    a, b, c = (m - 1 for m in event.triple)
    p0, p1 = traj.positions[k], traj.positions[k + 1]
    u0, du = p0[b] - p0[a], (p1[b] - p1[a]) - (p0[b] - p0[a])
    v0, dv = p0[c] - p0[a], (p1[c] - p1[a]) - (p0[c] - p0[a])
    # Im(conj(u0 + s du) (v0 + s dv)) as a polynomial in s
    coeffs = [
        (np.conj(du) * dv).imag,
        (np.conj(u0) * dv + np.conj(du) * v0).imag,
        (np.conj(u0) * v0).imag,
    ]
    roots = [s.real for s in np.roots(coeffs) if abs(s.imag) < 1e-12 and -1e-9 <= s.real <= 1 + 1e-9]
    ts = [times[k] + s * (times[k + 1] - times[k]) for s in roots]
    return min(ts, key=lambda t: abs(t - event.time))


def criterion_5():
    traj = standard_generator_trajectory(3, 2, 3)
    word, report = collinear_events(traj)
    errors = [abs(_exact_collinear_root(traj, e) - e.time) for e in report.events]
    image = Phi(BraidWord.of(3, (2, 3)))
    reduced = reduce(image).word
    middles = {e.triple[1] for e in report.events}
    ok = (
        report.ok
        and len(report.events) == 2
        and len(middles) == 2
        and phi(word) == image
        and len(image) == 4
        and len(reduced) > 0
        and max(errors) < 1e-9
    )
    return ok, f"events {len(report.events)}, Phi length {len(image)}, reduced '{reduced}', max time error {max(errors):.1e}"


# --- 6 ---------------------------------------------------------------------


def criterion_6():
    first = run(["discrepancy", "--n", "3", "2", "3"])
    second = run(["discrepancy", "--n", "3", "2", "3"])
    fields = dict(ln.split(": ", 1) for ln in first.output.splitlines()[1:])
    ok = (
        first.code == 0
        and first.output == second.output
        and fields["Phi[statement] trivial"] == "true"
        and fields["Phi[proof] trivial"] == "true"
        and fields["Phi[geometric] trivial"] == "false"
        and fields["mismatch"].startswith("yes")
    )
    return ok, f"mismatch: {fields['mismatch']}"


# --- 7 ---------------------------------------------------------------------


def criterion_7():
    rng = np.random.default_rng(20240607)
    gens = gn2_generators(3)
    start = time.perf_counter()
    ok = True
    for _ in range(1000):
        length = int(rng.integers(0, 13))
        w = GroupWord(Family.GN2, 3, tuple(gens[k] for k in rng.integers(0, len(gens), length)))
        sig = parity_signature(w)
        ok &= all(parity_signature(v) == sig for v in neighbors(w))
        ok &= is_minimal(reduce(w).word)
        ok &= len(reduce(w + w.inverse()).word) == 0
    elapsed = time.perf_counter() - start
    return ok and elapsed < 120, f"1000 words, {elapsed:.1f}s"


# --- 8 ---------------------------------------------------------------------


def criterion_8():
    minimal = minimality_certificate(parse_word("a'[1,2,3] a'[1,2,4]"))
    rng = np.random.default_rng(8)
    gens = prime_generators(4)
    unknown = 0
    for _ in range(200):
        left, right = (tuple(gens[k] for k in rng.integers(0, len(gens), rng.integers(0, 5))) for _ in range(2))
        g = gens[int(rng.integers(0, len(gens)))]
        w = GroupWord(Family.PRIME, 4, left + (g, g) + right)
        unknown += str(minimality_certificate(w)) == "Unknown"
    ok = str(minimal) == "Minimal" and unknown == 200
    return ok, f"[a'123, a'124] -> {minimal}; {unknown}/200 words with a repeated pair -> Unknown"


# --- 9 ---------------------------------------------------------------------


def criterion_9():
    rng = np.random.default_rng(99)
    worst, order_ok, count_ok = 0.0, True, True
    for _ in range(50):
        traj, t_star, order = planted_tangent_event(rng)
        word, report = tangent_events(traj)
        count_ok &= report.ok and len(report.events) == 1
        if report.events:
            worst = max(worst, abs(report.events[0].time - t_star))
            order_ok &= word.letters == (DoublePrimeGenerator(*order),)
    coincide = 0
    rng = np.random.default_rng(2024)
    for _ in range(20):
        circ, a, b, c, d = four_points_on_tangent_circle(rng)
        first, second = circumcircle(a, b, c), circumcircle(a, b, d)
        both_precede = precedes(a, b, first) and precedes(a, b, second)
        same = abs(first.center - second.center) < 1e-9 and abs(abs(c - second.center) - second.radius) < 1e-9
        others = [k for k in tangent_circles_through(a, b) if not precedes(a, b, k)]
        coincide += both_precede and same and len(others) == 1
    ok = count_ok and order_ok and worst < 1e-9 and coincide == 20
    return ok, f"50 planted events, max time error {worst:.1e}, orderings exact: {order_ok}; coincidence {coincide}/20"


# --- 10 --------------------------------------------------------------------


def criterion_10():
    checked, ok = 0, True
    for n in range(3, 6):
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                t = standard_generator_trajectory(n, i, j)
                expected = np.zeros((n, n), dtype=int)
                expected[i - 1, j - 1] = 1
                ok &= np.array_equal(linking_numbers(t, max_residual=0.1), expected)
                ok &= np.array_equal(t.positions[0], basepoints(n))
                checked += 1
    return ok, f"{checked} generator trajectories"


CRITERIA = [
    (1, "phi well-defined on all n=4 relators and a 200-relator n=5 sample", criterion_1),
    (2, "h well-defined on all n=4 relators", criterion_2),
    (3, "g well-defined on all n=4 relators; composite images match", criterion_3),
    (4, "geometric Phi respects PB_3 relations and beta*beta^-1", criterion_4),
    (5, "b_23 at n=3: two collinear events, four-letter nontrivial image", criterion_5),
    (6, "discrepancy report for b_23 at n=3 flags the mismatch", criterion_6),
    (7, "solver soundness on 1000 random words", criterion_7),
    (8, "sufficient minimality condition", criterion_8),
    (9, "tangent-circle event detection and ordering", criterion_9),
    (10, "linking numbers of standard generator trajectories", criterion_10),
]


@pytest.mark.parametrize("number, title, check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check):
    ok, detail = check()
    record(number, ok, title, detail)
    assert ok, detail


if __name__ == "__main__":
    for number, title, check in CRITERIA:
        ok, detail = check()
        record(number, ok, title, detail)
