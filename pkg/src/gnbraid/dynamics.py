"""Motions of n points in the plane and the words they trace.

A trajectory is sampled at increasing times in [0, 1] and interpolated
linearly between samples.  A critical moment is a time at which three points
are collinear (collinear mode) or lie on a circle internally tangent to the
unit circle (tangent mode).  Each critical moment contributes one generator;
the product over increasing time is the traced word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence, TextIO

import numpy as np
from scipy.optimize import bisect

from .core import (
    BraidWord,
    DomainError,
    DoublePrimeGenerator,
    Family,
    GroupWord,
    PrimeGenerator,
    check_strand_count,
)
from .geometry import Circle, Collinear, circumcircle, order_along_line, order_from_tangency

DEFAULT_TOL = 1e-12
EVENT_SEPARATION = 1e-9
SLOPE_MIN = 1e-8
QUADRUPLE_EPS = 1e-6
MIN_SEPARATION = 1e-9
COLLINEAR_EPS = 1e-10

SAMPLES_PER_STAGE = 512  # four stages on [0, 1]: 2048 samples per unit time
INNER_RADIUS = 0.85
TANGENT_SCALE = 0.9

FORMAT_HEADER = "gnbraid-trajectory 1"


class NumericalQualityError(RuntimeError):
    """A computed quantity that should be an integer is not close to one."""


@dataclass(frozen=True, eq=False)
class Trajectory:
    """n strands sampled at ``times``; ``positions[t, k]`` is strand k+1 (complex)."""

    n: int
    times: np.ndarray
    positions: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        check_strand_count(self.n)
        times = np.asarray(self.times, dtype=float)
        pos = np.asarray(self.positions, dtype=complex)
        if times.ndim != 1 or len(times) < 2:
            raise DomainError("a trajectory needs at least two sample times")
        if pos.shape != (len(times), self.n):
            raise DomainError(f"positions must have shape ({len(times)}, {self.n}), got {pos.shape}")
        if np.any(np.diff(times) <= 0):
            raise DomainError("sample times must be strictly increasing")
        times.setflags(write=False)
        pos.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "positions", pos)

    def __len__(self) -> int:
        return len(self.times)

    def at(self, t: float) -> np.ndarray:
        """Interpolated positions at time t."""
        times = self.times
        a = int(np.clip(np.searchsorted(times, t, side="right") - 1, 0, len(times) - 2))
        s = (t - times[a]) / (times[a + 1] - times[a])
        return self.positions[a] + s * (self.positions[a + 1] - self.positions[a])

    def min_separation(self) -> float:
        p = self.positions
        return min(float(np.min(np.abs(p[:, a] - p[:, b]))) for a, b in combinations(range(self.n), 2))

    def is_closed(self, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.positions[0], self.positions[-1], rtol=0, atol=atol))

    def same_samples(self, other: "Trajectory") -> bool:
        return (
            self.n == other.n
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.positions, other.positions)
        )


def basepoints(n: int, scale: float = 1.0) -> np.ndarray:
    """z_k = scale * exp(2 pi i k / n), k = 1..n."""
    check_strand_count(n)
    k = np.arange(1, n + 1)
    return scale * np.exp(2j * np.pi * k / n)


def constant_trajectory(n: int, scale: float = 1.0, samples: int = 2) -> Trajectory:
    times = np.linspace(0.0, 1.0, samples)
    return Trajectory(n, times, np.tile(basepoints(n, scale), (samples, 1)), scale)


# --- the standard generator dynamics ----------------------------------------


def _smoothstep(x):
    x = np.clip(x, 0.0, 1.0)
    return x * x * (3 - 2 * x)


def _dip(s, width=0.15):
    """0 at both ends, 1 on the middle stretch, smooth ramps of ``width``."""
    return np.minimum(_smoothstep(s / width), _smoothstep((1 - s) / width))


def _stage_paths(n: int, i: int, j: int, scale: float):
    R = scale
    spacing = 2 * math.pi / n
    delta = min(0.2, 0.25 * spacing)
    kappa = 0.08
    th_i, th_j = spacing * i, spacing * j
    landing = th_j - delta

    def approach(s):
        # strand i runs inside the circle past i+1..j-1 and lands just before j
        ang = th_i + s * (landing - th_i)
        rad = R - (R - INNER_RADIUS * R) * _dip(s)
        return rad * np.exp(1j * ang)

    def hop(s):
        # strand j slips past the landed strand i on the inner side
        ang = th_j - 2 * delta * s
        rad = R * (1 - kappa * np.sin(np.pi * s))
        return rad * np.exp(1j * ang)

    def settle(s):
        ang = th_j - 2 * delta * (1 - s)
        return R * np.exp(1j * ang)

    return [
        (i, approach),
        (j, hop),
        (i, lambda s: approach(1 - s)),
        (j, settle),
    ]


def generator_stages(
    n: int, i: int, j: int, scale: float = 1.0, samples_per_stage: int = SAMPLES_PER_STAGE
) -> list[Trajectory]:
    """The four stages of the b_{ij} motion, each on its own time interval [0, 1]."""
    check_strand_count(n)
    if not (1 <= i < j <= n):
        raise DomainError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    base = basepoints(n, scale)
    s = np.linspace(0.0, 1.0, samples_per_stage + 1)
    current = base.copy()
    out = []
    for strand, path in _stage_paths(n, i, j, scale):
        block = np.tile(current, (len(s), 1))
        block[:, strand - 1] = path(s)
        block[0] = current
        out.append(block)
        current = block[-1].copy()
    # exact closure at the basepoints
    out[-1][-1] = base
    return [Trajectory(n, s, block, scale) for block in out]


def standard_generator_trajectory(
    n: int, i: int, j: int, scale: float = 1.0, samples_per_stage: int = SAMPLES_PER_STAGE
) -> Trajectory:
    """A motion realising b_{ij}: i comes in past i+1..j-1, j slips around it, i goes back, j resettles.

    Strands other than i and j never move.
    """
    return concatenate_many(generator_stages(n, i, j, scale, samples_per_stage))


def concatenate(t1: Trajectory, t2: Trajectory) -> Trajectory:
    """t1 on [0, 1/2] followed by t2 on [1/2, 1]."""
    return concatenate_many([t1, t2])


def concatenate_many(parts: Sequence[Trajectory]) -> Trajectory:
    """Equal time shares for every part, in order."""
    if not parts:
        raise DomainError("nothing to concatenate")
    first = parts[0]
    for a, b in zip(parts, parts[1:]):
        if b.n != first.n or b.scale != first.scale:
            raise DomainError("trajectories over different strand counts or scales")
        if not np.allclose(a.positions[-1], b.positions[0], rtol=0, atol=1e-12):
            raise DomainError("end positions of one part do not match the start of the next")
    k = len(parts)
    times = [parts[0].times / k]
    pos = [parts[0].positions]
    for idx, p in enumerate(parts[1:], start=1):
        times.append((idx + p.times[1:]) / k)
        pos.append(p.positions[1:])
    return Trajectory(first.n, np.concatenate(times), np.concatenate(pos), first.scale)


def inverse_trajectory(t: Trajectory) -> Trajectory:
    return Trajectory(t.n, 1.0 - t.times[::-1], t.positions[::-1], t.scale)


def reparametrize(t: Trajectory, func: Callable[[np.ndarray], np.ndarray]) -> Trajectory:
    """Same samples at times func(t); func must be increasing."""
    return Trajectory(t.n, func(t.times), t.positions, t.scale)


def braid_trajectory(braid: BraidWord, scale: float = 1.0, samples_per_stage: int = SAMPLES_PER_STAGE) -> Trajectory:
    """Standard generator trajectories laid end to end (time reversal for inverses)."""
    if len(braid) == 0:
        return constant_trajectory(braid.n, scale)
    parts = []
    for b in braid:
        t = standard_generator_trajectory(braid.n, b.i, b.j, scale, samples_per_stage)
        parts.append(t if b.exponent == 1 else inverse_trajectory(t))
    return concatenate_many(parts)


# --- events -----------------------------------------------------------------


@dataclass(frozen=True)
class Event:
    time: float
    kind: str  # "collinear" | "tangent"
    triple: tuple[int, int, int]  # ordered strand labels
    generator: object
    slope: float
    gap: float  # distance of the nearest fourth point to the line / circle
    points: dict = field(default_factory=dict, compare=False, repr=False)
    circle: Circle | None = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        return f"t={self.time:.15f} {self.kind} {self.generator}"


@dataclass(frozen=True)
class Violation:
    kind: str  # simultaneous | non-transversal | near-quadruple | collision | degenerate
    times: tuple[float, ...]
    detail: str = ""

    def __str__(self) -> str:
        ts = ", ".join(f"{t:.15f}" for t in self.times)
        return f"{self.kind} at t=[{ts}] {self.detail}".rstrip()


@dataclass(frozen=True)
class GenericityReport:
    events: tuple[Event, ...] = ()
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "good-and-stable" if self.ok else "violations"

    def format(self) -> str:
        lines = [f"verdict: {self.verdict}", f"events: {len(self.events)}"]
        lines += [f"  {e}" for e in self.events]
        lines += [f"  violation: {v}" for v in self.violations]
        return "\n".join(lines)


def validate_genericity(
    events: Iterable[Event],
    delta: float = EVENT_SEPARATION,
    slope_min: float = SLOPE_MIN,
    gap_min: float = QUADRUPLE_EPS,
    extra: Iterable[Violation] = (),
) -> GenericityReport:
    """Flag events closer than ``delta`` in time, flat crossings and near-quadruple incidences."""
    events = tuple(sorted(events, key=lambda e: (e.time, e.triple)))
    violations = list(extra)
    for a, b in zip(events, events[1:]):
        if b.time - a.time < delta:
            violations.append(
                Violation("simultaneous", (a.time, b.time), f"{a.generator} / {b.generator}")
            )
    for e in events:
        if e.slope < slope_min:
            violations.append(Violation("non-transversal", (e.time,), str(e.generator)))
        if e.gap < gap_min:
            violations.append(Violation("near-quadruple", (e.time,), str(e.generator)))
    violations.sort(key=lambda v: (v.times, v.kind))
    return GenericityReport(events, tuple(violations))


def _collinear_residual(pa, pb, pc):
    u, v = pb - pa, pc - pa
    with np.errstate(divide="ignore", invalid="ignore"):
        # coincident points give nan; collisions are reported separately
        return (np.conj(u) * v).imag / (np.abs(u) * np.abs(v))


def _tangent_residual(pa, pb, pc):
    b, c = pb - pa, pc - pa
    d = 2.0 * (np.conj(b) * c).imag
    with np.errstate(divide="ignore", invalid="ignore"):
        z = 1j * (np.abs(c) ** 2 * b - np.abs(b) ** 2 * c) / d
        res = np.abs(pa + z) + np.abs(z) - 1.0
    # a collinear triple has its circle through infinity: far outside the disc
    return np.where(np.isfinite(res), res, np.inf)


def _scan(traj: Trajectory, residual, tol: float):
    """Yield (triple, time, slope) for every sign change of ``residual`` on every triple.

    A bracket on which the residual is undefined yields time None and the bracket in place of the slope.
    """
    pos, times = traj.positions, traj.times
    for a, b, c in combinations(range(traj.n), 3):
        r = residual(pos[:, a], pos[:, b], pos[:, c])
        finite = ~np.isnan(r)
        sgn = np.where(r < 0, -1, 1)
        changes = (sgn[:-1] != sgn[1:]) & finite[:-1] & finite[1:]
        for k in np.nonzero(changes)[0]:
            t0, t1 = times[k], times[k + 1]
            p0, dp = pos[k, [a, b, c]], pos[k + 1, [a, b, c]] - pos[k, [a, b, c]]

            def f(t, p0=p0, dp=dp, t0=t0, t1=t1):
                q = p0 + ((t - t0) / (t1 - t0)) * dp
                return float(residual(q[0], q[1], q[2]))

            f0, f1 = f(t0), f(t1)
            if f0 == 0.0:
                root = t0
            elif f1 == 0.0:
                root = t1
            else:
                try:
                    root = bisect(f, t0, t1, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200)
                except ValueError:
                    yield (a + 1, b + 1, c + 1), None, (float(t0), float(t1))
                    continue
            slope = abs(f1 - f0) / (t1 - t0) if np.isfinite(f1 - f0) else np.inf
            yield (a + 1, b + 1, c + 1), root, slope


def _undefined(triple, t_bracket) -> Violation:
    return Violation("degenerate", t_bracket, f"residual undefined for triple {triple}")


def _separation_violations(traj: Trajectory, min_sep: float) -> list[Violation]:
    out = []
    p = traj.positions
    for a, b in combinations(range(traj.n), 2):
        d = np.abs(p[:, a] - p[:, b])
        k = int(np.argmin(d))
        if d[k] <= min_sep:
            out.append(Violation("collision", (float(traj.times[k]),), f"strands {a + 1},{b + 1}"))
    return out


def detect_collinear(traj: Trajectory, tol: float = DEFAULT_TOL) -> tuple[list[Event], list[Violation]]:
    events, extra = [], _separation_violations(traj, MIN_SEPARATION)
    for triple, t, slope in _scan(traj, _collinear_residual, tol):
        if t is None:
            extra.append(_undefined(triple, slope))
            continue
        p = traj.at(t)
        pts = {k: p[k - 1] for k in triple}
        x, y, z = order_along_line(pts)
        d = pts[z] - pts[x]
        gap = math.inf
        for m in range(1, traj.n + 1):
            if m not in triple:
                gap = min(gap, abs(((p[m - 1] - pts[x]) * np.conj(d)).imag) / abs(d))
        events.append(Event(t, "collinear", (x, y, z), PrimeGenerator(x, y, z), slope, gap, pts))
    return events, extra


def detect_tangent(traj: Trajectory, tol: float = DEFAULT_TOL) -> tuple[list[Event], list[Violation]]:
    if np.any(np.abs(traj.positions) >= 1.0):
        raise DomainError("tangent-circle tracing needs every position strictly inside the unit disc")
    events, extra = [], _separation_violations(traj, MIN_SEPARATION)
    for triple, t, slope in _scan(traj, _tangent_residual, tol):
        if t is None:
            extra.append(_undefined(triple, slope))
            continue
        p = traj.at(t)
        pts = {k: p[k - 1] for k in triple}
        try:
            circ = circumcircle(*pts.values(), eps=COLLINEAR_EPS)
        except Collinear:
            extra.append(Violation("degenerate", (t,), f"collinear triple {triple} at a tangency candidate"))
            continue
        order = order_from_tangency(pts, circ)
        gap = math.inf
        for m in range(1, traj.n + 1):
            if m not in triple:
                gap = min(gap, abs(abs(p[m - 1] - circ.center) - circ.radius))
        events.append(
            Event(t, "tangent", order, DoublePrimeGenerator(*order), slope, gap, pts, circ)
        )
    return events, extra


def collinear_events(traj: Trajectory, tol: float = DEFAULT_TOL) -> tuple[GroupWord, GenericityReport]:
    """The word in a'_{ijk} traced by collinear triples, middle point second."""
    events, extra = detect_collinear(traj, tol)
    report = validate_genericity(events, extra=extra)
    word = GroupWord(Family.PRIME, traj.n, tuple(e.generator for e in report.events))
    return word, report


def tangent_events(traj: Trajectory, tol: float = DEFAULT_TOL) -> tuple[GroupWord, GenericityReport]:
    """The word in a''_{ijk} traced by triples on circles tangent to |z| = 1."""
    events, extra = detect_tangent(traj, tol)
    report = validate_genericity(events, extra=extra)
    word = GroupWord(Family.DOUBLE_PRIME, traj.n, tuple(e.generator for e in report.events))
    return word, report


def event_precedes(event: Event, a: int, b: int) -> bool:
    """Whether strand a comes before strand b on the event's tangent circle."""
    from .geometry import precedes

    if event.circle is None:
        raise DomainError("only tangent-circle events carry a circle")
    if a not in event.points or b not in event.points:
        raise DomainError(f"strands {a}, {b} are not on this event's circle")
    return precedes(event.points[a], event.points[b], event.circle)


# --- linking numbers --------------------------------------------------------


def linking_numbers(traj: Trajectory, max_residual: float = 0.1) -> np.ndarray:
    """Winding numbers of z_i - z_j about 0, for i < j (upper triangle)."""
    n = traj.n
    out = np.zeros((n, n), dtype=int)
    p = traj.positions
    for a, b in combinations(range(n), 2):
        d = p[:, a] - p[:, b]
        w = float(np.sum(np.angle(d[1:] / d[:-1]))) / (2 * math.pi)
        k = round(w)
        if abs(w - k) > max_residual:
            raise NumericalQualityError(f"winding of strands {a + 1},{b + 1} is {w:.4f}, not an integer")
        out[a, b] = k
    return out


# --- traced generator images ------------------------------------------------


class NotGeneric(RuntimeError):
    def __init__(self, report: GenericityReport):
        super().__init__("trajectory is not good and stable:\n" + report.format())
        self.report = report


@lru_cache(maxsize=None)
def traced_generator_word(n: int, i: int, j: int) -> GroupWord:
    """f(b_ij) read off the standard dynamics with unit-circle basepoints."""
    word, report = collinear_events(standard_generator_trajectory(n, i, j))
    if not report.ok:
        raise NotGeneric(report)
    return word


@lru_cache(maxsize=None)
def traced_tangent_word(n: int, i: int, j: int) -> GroupWord:
    """g(b_ij) read off the standard dynamics scaled into the disc."""
    word, report = tangent_events(standard_generator_trajectory(n, i, j, TANGENT_SCALE))
    if not report.ok:
        raise NotGeneric(report)
    return word


# --- file format ------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.20f}"


def write_trajectory(traj: Trajectory, fp: TextIO) -> None:
    fp.write(f"{FORMAT_HEADER}\n")
    fp.write(f"n {traj.n}\n")
    fp.write(f"scale {_fmt(traj.scale)}\n")
    fp.write(f"samples {len(traj)}\n")
    for t, row in zip(traj.times, traj.positions):
        fields = [_fmt(t)]
        for z in row:
            fields += [_fmt(z.real), _fmt(z.imag)]
        fp.write(" ".join(fields) + "\n")


def read_trajectory(fp: TextIO) -> Trajectory:
    lines = [ln for ln in fp.read().splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise DomainError(f"not a trajectory file (expected header {FORMAT_HEADER!r})")
    header = {}
    for ln in lines[1:4]:
        key, _, val = ln.partition(" ")
        header[key] = val.strip()
    try:
        n, scale, m = int(header["n"]), float(header["scale"]), int(header["samples"])
    except (KeyError, ValueError) as exc:
        raise DomainError(f"bad trajectory header: {exc}") from None
    rows = lines[4:]
    if len(rows) != m:
        raise DomainError(f"header announces {m} samples, file has {len(rows)}")
    try:
        data = np.array([[float(v) for v in r.split()] for r in rows])
    except ValueError as exc:
        raise DomainError(f"bad sample record: {exc}") from None
    if data.ndim != 2 or data.shape != (m, 1 + 2 * n):
        raise DomainError(f"each sample needs {1 + 2 * n} fields")
    pos = data[:, 1::2] + 1j * data[:, 2::2]
    return Trajectory(n, data[:, 0], pos, scale)
