import io

import numpy as np
import pytest

from gnbraid.core import BraidWord, DomainError, DoublePrimeGenerator, Family, GroupWord, PrimeGenerator
from gnbraid.dynamics import (
    Event,
    NumericalQualityError,
    Trajectory,
    basepoints,
    braid_trajectory,
    collinear_events,
    concatenate,
    concatenate_many,
    constant_trajectory,
    event_precedes,
    generator_stages,
    inverse_trajectory,
    linking_numbers,
    read_trajectory,
    reparametrize,
    standard_generator_trajectory,
    tangent_events,
    traced_generator_word,
    traced_tangent_word,
    validate_genericity,
    write_trajectory,
)
from gnbraid.maps import Phi, h, phi
from gnbraid.relators import relators_pure_braid
from gnbraid.solver import SolverBudget, equal, reduce
from oracles import linear_motion, planted_collinear_event, planted_tangent_event


def elementary(n, i, j):
    m = np.zeros((n, n), dtype=int)
    m[i - 1, j - 1] = 1
    return m


PAIRS = [(n, i, j) for n in (3, 4, 5) for i in range(1, n) for j in range(i + 1, n + 1)]


@pytest.mark.parametrize("n, i, j", PAIRS)
def test_standard_trajectory_realises_generator(n, i, j):
    t = standard_generator_trajectory(n, i, j)
    assert np.array_equal(linking_numbers(t), elementary(n, i, j))
    assert np.array_equal(t.positions[0], basepoints(n))
    assert np.array_equal(t.positions[-1], basepoints(n))
    assert t.min_separation() > 1e-3
    moving = {k + 1 for k in range(n) if np.ptp(np.abs(t.positions[:, k] - t.positions[0, k])) > 0}
    assert moving == {i, j}
    for scale, tracer in ((1.0, collinear_events), (0.9, tangent_events)):
        word, report = tracer(standard_generator_trajectory(n, i, j, scale))
        assert report.ok, report.format()


def test_standard_trajectory_is_concatenated_stages():
    stages = generator_stages(4, 1, 3)
    assert len(stages) == 4
    assert concatenate_many(stages).same_samples(standard_generator_trajectory(4, 1, 3))


def test_bad_generator_indices():
    with pytest.raises(DomainError):
        standard_generator_trajectory(3, 2, 2)
    with pytest.raises(DomainError):
        standard_generator_trajectory(3, 1, 4)


def test_traced_b23_word():
    w = traced_generator_word(3, 2, 3)
    assert len(w) == 2
    assert len({g.j for g in w}) == 2
    assert len(Phi(BraidWord.of(3, (2, 3)))) == 4


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_constant_trajectories_trace_nothing(n):
    w, report = collinear_events(constant_trajectory(n))
    assert len(w) == 0 and report.ok
    w, report = tangent_events(constant_trajectory(n, 0.9))
    assert len(w) == 0 and report.ok
    assert not linking_numbers(constant_trajectory(n)).any()


def test_tangent_mode_needs_points_inside_disc():
    with pytest.raises(DomainError):
        tangent_events(constant_trajectory(3, 1.0))


def test_planted_tangent_events():
    rng = np.random.default_rng(7)
    for _ in range(20):
        traj, t_star, order = planted_tangent_event(rng)
        w, report = tangent_events(traj)
        assert report.ok
        assert len(report.events) == 1
        assert abs(report.events[0].time - t_star) < 1e-9
        assert w.letters == (DoublePrimeGenerator(*order),)
        e = report.events[0]
        assert event_precedes(e, order[0], order[1]) and not event_precedes(e, order[1], order[0])


def test_planted_collinear_events():
    rng = np.random.default_rng(8)
    for _ in range(20):
        traj, t_star, order = planted_collinear_event(rng)
        w, report = collinear_events(traj)
        assert len(report.events) == 1
        assert abs(report.events[0].time - t_star) < 1e-9
        assert w.letters == (PrimeGenerator(*order),)


def test_event_precedes_rejects_collinear_events():
    _, report = collinear_events(standard_generator_trajectory(3, 2, 3))
    with pytest.raises(DomainError):
        event_precedes(report.events[0], 1, 2)


# --- composition ------------------------------------------------------------


def test_inverse_trajectory():
    t = standard_generator_trajectory(3, 1, 3)
    inv = inverse_trajectory(t)
    assert inverse_trajectory(inv).same_samples(t)
    w, _ = collinear_events(t)
    wi, _ = collinear_events(inv)
    assert wi == w.inverse()
    assert np.array_equal(linking_numbers(inv), -linking_numbers(t))


def test_concatenate_words_and_linking_add():
    t1 = standard_generator_trajectory(4, 1, 3)
    t2 = standard_generator_trajectory(4, 2, 4)
    both = concatenate(t1, t2)
    w1, _ = collinear_events(t1)
    w2, _ = collinear_events(t2)
    w, report = collinear_events(both)
    assert report.ok and w == w1 + w2
    assert np.array_equal(linking_numbers(both), linking_numbers(t1) + linking_numbers(t2))


def test_concatenate_with_inverse_is_trivial():
    for n, i, j in [(3, 1, 2), (3, 1, 3), (3, 2, 3), (4, 1, 4)]:
        t = standard_generator_trajectory(n, i, j)
        w, report = collinear_events(concatenate(t, inverse_trajectory(t)))
        assert report.ok and len(w) % 2 == 0
        assert len(reduce(phi(w)).word) == 0


def test_concatenate_rejects_mismatched_endpoints():
    with pytest.raises(DomainError):
        concatenate(constant_trajectory(3, 1.0), constant_trajectory(3, 0.9))


def test_braid_trajectory_traces_letterwise():
    b = BraidWord.of(3, (1, 2), (2, 3, -1), (1, 3))
    w, report = collinear_events(braid_trajectory(b))
    expected = GroupWord(Family.PRIME, 3)
    for x in b:
        g = traced_generator_word(3, x.i, x.j)
        expected = expected + (g if x.exponent == 1 else g.inverse())
    assert report.ok and w == expected


def test_event_parity_per_triple():
    t = braid_trajectory(BraidWord.of(4, (1, 3), (2, 4), (1, 2, -1)))
    _, report = collinear_events(t)
    counts = {}
    for e in report.events:
        key = frozenset(e.triple)
        counts[key] = counts.get(key, 0) + 1
    assert all(c % 2 == 0 for c in counts.values())


# --- invariance -------------------------------------------------------------


def test_reparametrization_invariance():
    t = standard_generator_trajectory(3, 1, 3)
    w, _ = collinear_events(t)
    for func in (lambda s: s**2, lambda s: np.sin(np.pi * s / 2), lambda s: (s + s**3) / 2):
        w2, report = collinear_events(reparametrize(t, func))
        assert report.ok and w2 == w
    wt, _ = tangent_events(standard_generator_trajectory(3, 1, 3, 0.9))
    wt2, _ = tangent_events(reparametrize(standard_generator_trajectory(3, 1, 3, 0.9), lambda s: s**2))
    assert wt2 == wt


def test_perturbation_stability():
    rng = np.random.default_rng(3)
    for n, i, j in [(3, 1, 3), (3, 2, 3), (4, 1, 4)]:
        for scale, tracer in ((1.0, collinear_events), (0.9, tangent_events)):
            t = standard_generator_trajectory(n, i, j, scale)
            w, _ = tracer(t)
            noise = rng.uniform(-1e-4, 1e-4, t.positions.shape) + 1j * rng.uniform(-1e-4, 1e-4, t.positions.shape)
            noisy = Trajectory(n, t.times, t.positions + noise, scale)
            w2, report = tracer(noisy)
            assert report.ok and w2 == w


def test_tracers_are_deterministic():
    t = standard_generator_trajectory(4, 1, 4, 0.9)
    assert tangent_events(t) == tangent_events(t)
    assert collinear_events(t) == collinear_events(t)


# --- genericity -------------------------------------------------------------


def _event(t, triple=(1, 2, 3), slope=1.0, gap=1.0):
    return Event(t, "collinear", triple, PrimeGenerator(*triple), slope, gap)


def test_validate_genericity_examples():
    assert validate_genericity([_event(0.2), _event(0.7)], delta=1e-6).verdict == "good-and-stable"
    report = validate_genericity([_event(0.5), _event(0.5, (1, 2, 4))])
    assert [v.kind for v in report.violations] == ["simultaneous"]
    assert validate_genericity([_event(0.5, slope=0.0)]).violations[0].kind == "non-transversal"
    assert validate_genericity([_event(0.5, gap=1e-9)]).violations[0].kind == "near-quadruple"


def test_planted_quadruple_collinearity_flagged():
    # strands 3 and 4 cross the real axis together at t = 1/2, joining 1 and 2
    t = linear_motion([-0.5, 0.5, 0.2 - 0.1j, -0.1 - 0.1j], [-0.5, 0.5, 0.2 + 0.1j, -0.1 + 0.1j])
    _, report = collinear_events(t)
    kinds = {v.kind for v in report.violations}
    assert report.verdict == "violations"
    assert {"near-quadruple", "simultaneous"} <= kinds


def test_simultaneous_disjoint_events_flagged():
    left = [-0.9 + 0.0j, -0.5 + 0.0j, -0.7 - 0.1j]
    right = [0.5 + 0.0j, 0.9 + 0.0j, 0.7 - 0.05j]
    starts = left + right
    ends = left[:2] + [-0.7 + 0.1j] + right[:2] + [0.7 + 0.05j]
    _, report = collinear_events(linear_motion(starts, ends))
    assert "simultaneous" in {v.kind for v in report.violations}


def test_collision_flagged():
    t = linear_motion([-0.5, 0.5, 0.3j], [0.5, -0.5, 0.3j], samples=3)
    _, report = collinear_events(t)
    assert "collision" in {v.kind for v in report.violations}


def test_linking_numbers_reject_open_paths():
    half = linear_motion([0.0, 0.5, 0.9j], [0.0, -0.5, 0.9j])
    with pytest.raises(NumericalQualityError):
        linking_numbers(
            Trajectory(3, np.linspace(0, 1, 50), np.column_stack([
                np.zeros(50), 0.5 * np.exp(1j * np.linspace(0, np.pi, 50)), np.full(50, 0.9j)
            ]))
        )
    assert half.n == 3


# --- file format ------------------------------------------------------------


def test_trajectory_file_round_trip():
    t = braid_trajectory(BraidWord.of(3, (1, 3), (2, 3, -1)), scale=0.9)
    buf = io.StringIO()
    write_trajectory(t, buf)
    text = buf.getvalue()
    assert text.startswith("gnbraid-trajectory 1\nn 3\n")
    back = read_trajectory(io.StringIO(text))
    assert back.n == 3 and back.scale == 0.9 and len(back) == len(t)
    assert np.allclose(back.positions, t.positions, rtol=0, atol=1e-15)
    assert collinear_events(back)[0] == collinear_events(t)[0]
    assert tangent_events(back)[0] == tangent_events(t)[0]


@pytest.mark.parametrize(
    "text",
    ["", "other 1\n", "gnbraid-trajectory 1\nn 3\nscale 1\nsamples 2\n0 1 2\n", "gnbraid-trajectory 1\nn 3\nscale 1\nsamples 1\n0 a b c d e f\n"],
)
def test_trajectory_file_errors(text):
    with pytest.raises(DomainError):
        read_trajectory(io.StringIO(text))


# --- the traced invariant respects the braid relations -----------------------


def test_pb3_relations_give_equal_images():
    for rel in relators_pure_braid(3):
        assert equal(Phi(rel.left), Phi(rel.right)), str(rel)
        left = h(_tangent_word(rel.left))
        right = h(_tangent_word(rel.right))
        assert equal(left, right), str(rel)


def _tangent_word(braid):
    out = GroupWord(Family.DOUBLE_PRIME, braid.n)
    for b in braid:
        g = traced_tangent_word(braid.n, b.i, b.j)
        out = out + (g if b.exponent == 1 else g.inverse())
    return out


@pytest.mark.slow
def test_pb4_relations_give_equal_images():
    budget = SolverBudget(max_length=200)
    for rel in relators_pure_braid(4):
        assert equal(Phi(rel.left), Phi(rel.right), budget), str(rel)
        assert equal(h(_tangent_word(rel.left)), h(_tangent_word(rel.right)), budget), str(rel)


def test_short_braid_homomorphy():
    gens = [(1, 2), (1, 3), (2, 3)]
    words = [BraidWord.of(3, a, b) for a in gens for b in gens]
    for w in words:
        traced, report = collinear_events(braid_trajectory(w))
        assert report.ok
        assert equal(phi(traced), Phi(w))
        assert len(reduce(Phi(w + w.inverse())).word) == 0
