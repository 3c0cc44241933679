"""Levi-form kernels, the sharp function and its finite-difference oracle,
the explicit Kobayashi metric on balls, and normality-constant scans."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import domains
from .domains import Ball, Domain
from .errors import DomainError, EvaluationError
from .expr import CPoint, HoloExpr, evaluate, evaluate_jet
from .sampling import scan_rays, sphere_directions


@dataclass(frozen=True)
class SharpValue:
    """Nonnegative, scales like an inverse length; zero iff the gradient vanishes."""

    value: float


def levi_form_fd(
    field: Callable[[CPoint], float], z: CPoint, v: CPoint, h: float
) -> float:
    """Five-point discrete Levi form of a real field along the complex line
    t -> z + t*v:

        [F(z+hv) + F(z-hv) + F(z+ihv) + F(z-ihv) - 4 F(z)] / (4 h^2)

    Second-order accurate in h for C^2 fields; exact for Hermitian quadratics.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    z = np.asarray(z, dtype=complex)
    v = np.asarray(v, dtype=complex)
    stencil = (
        field(tuple(z + h * v))
        + field(tuple(z - h * v))
        + field(tuple(z + 1j * h * v))
        + field(tuple(z - 1j * h * v))
        - 4.0 * field(tuple(z))
    )
    return stencil / (4.0 * h * h)


def log1p_sq_field(f: HoloExpr) -> Callable[[CPoint], float]:
    """The real field z -> log(1 + |f(z)|^2)."""

    def field(z: CPoint) -> float:
        w = evaluate(f, z)
        return math.log1p(w.real * w.real + w.imag * w.imag)

    return field


def levi_log1p_closed(f: HoloExpr, z: CPoint, v: CPoint) -> float:
    """Levi form of log(1+|f|^2) at z along v, in closed form.

    For holomorphic f the mixed Hessian of log(1+|f|^2) is rank one and the
    form collapses to |sum_k df/dz_k * v_k|^2 / (1+|f|^2)^2, which is what
    this returns; `levi_form_fd` on `log1p_sq_field` is the independent check.
    """
    jet = evaluate_jet(f, z)
    pairing = sum(g * vk for g, vk in zip(jet.gradient, v))
    denom = 1.0 + abs(jet.value) ** 2
    return abs(pairing) ** 2 / (denom * denom)


def sharp(f: HoloExpr, z: CPoint) -> SharpValue:
    """Supremum over unit directions of the root Levi form of log(1+|f|^2).

    Equals |grad f| / (1 + |f|^2); the supremum is attained by aligning the
    direction with the conjugate gradient.  For n=1 this is the classical
    spherical derivative |f'|/(1+|f|^2).
    """
    jet = evaluate_jet(f, z)
    grad_norm = math.sqrt(sum(abs(g) ** 2 for g in jet.gradient))
    return SharpValue(grad_norm / (1.0 + abs(jet.value) ** 2))


def sharp_fd(
    f: HoloExpr, z: CPoint, sphere_samples: int, h: float, seed: int = 0
) -> float:
    """Brute-force oracle for `sharp`: max over sampled unit directions of
    sqrt(max(0, levi_form_fd(log(1+|f|^2), z, v, h)))."""
    field = log1p_sq_field(f)
    best = 0.0
    for v in sphere_directions(f.dimension, sphere_samples, seed):
        levi = levi_form_fd(field, z, tuple(v), h)
        if levi > best:
            best = levi
    return math.sqrt(max(0.0, best))


# --------------------------------------------------------------------------
# Kobayashi metric on balls, sandwich bounds on general domains
# --------------------------------------------------------------------------

def _ball_frame(ball: Ball, z: CPoint, v: CPoint):
    w = np.asarray(z, dtype=complex) - np.asarray(ball.center, dtype=complex)
    vv = np.asarray(v, dtype=complex)
    if np.linalg.norm(vv) == 0:
        raise ValueError("direction v must be nonzero")
    slack = ball.radius**2 - float(np.linalg.norm(w)) ** 2
    if slack <= 0:
        raise DomainError("point is not strictly inside the ball")
    return w, vv, slack


def kobayashi_ball(ball: Ball, z: CPoint, v: CPoint) -> float:
    """Exact Kobayashi metric of a Euclidean ball:

        sqrt((d^2 - |w|^2) |v|^2 + |(w, v)|^2) / (d^2 - |w|^2),   w = z - center,

    with (w, v) the Hermitian pairing (the modulus does not depend on which
    slot carries the conjugation)."""
    w, vv, slack = _ball_frame(ball, z, v)
    pairing = complex(np.sum(w * np.conj(vv)))
    num = math.sqrt(slack * float(np.linalg.norm(vv)) ** 2 + abs(pairing) ** 2)
    return num / slack


def kobayashi_upper(ball: Ball, z: CPoint, v: CPoint) -> float:
    """Cauchy-Schwarz upper bound d |v| / (d^2 - |z-center|^2); equals
    `kobayashi_ball` in one variable and whenever z-center is parallel to v."""
    _, vv, slack = _ball_frame(ball, z, v)
    return ball.radius * float(np.linalg.norm(vv)) / slack


def kobayashi_domain_bounds(domain: Domain, z: CPoint, v: CPoint) -> tuple[float, float]:
    """(lower, upper) sandwich for the Kobayashi metric of the domain.

    Inclusion decreases the metric, so the inscribed ball at z gives the
    upper bound and the circumscribed ball the lower bound.
    """
    upper = kobayashi_ball(domains.inscribed_ball(domain, z), z, v)
    lower = kobayashi_ball(domains.circumscribed_ball(domain), z, v)
    return lower, upper


# --------------------------------------------------------------------------
# Normality-constant scan
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SamplingPlan:
    """Shells are boundary-distance fractions in (0, 1], scanned in the given
    order; each shell places `points_per_shell` points along deterministic
    rays from the domain center (axis rays first)."""

    shells: tuple[float, ...]
    points_per_shell: int
    directions_per_point: int
    seed: int = 0

    def __post_init__(self):
        if not self.shells or any(not (0.0 < t <= 1.0) for t in self.shells):
            raise ValueError("shells must be fractions in (0, 1]")
        if self.points_per_shell < 1 or self.directions_per_point < 1:
            raise ValueError("points and directions per shell must be positive")


@dataclass(frozen=True)
class ScanSample:
    point: CPoint
    direction: CPoint
    levi: float
    k_lower: float
    k_upper: float
    ratio_lower: float  # levi / k_upper^2: certified lower bound on C at this sample
    ratio_upper: float  # levi / k_lower^2


@dataclass(frozen=True)
class NormalityEstimate:
    samples: tuple[ScanSample, ...]
    shell_trend: tuple[tuple[float, float, float], ...]  # (shell, max ratio_lower, min delta)
    c_required_lower_bound: float
    verdict: str  # bounded-consistent | divergent | inconclusive
    skipped: int = 0
    errors: tuple[str, ...] = field(default_factory=tuple)


def _trend_verdict(maxima: list[float]) -> str:
    if len(maxima) < 3:
        return "inconclusive"
    m1, m2, m3 = maxima[-3:]
    if m1 >= m2 >= m3:
        return "bounded-consistent"
    if m1 <= m2 <= m3 and (m3 >= 10.0 * m1 if m1 > 0 else m3 > 0):
        return "divergent"
    return "inconclusive"


def normality_scan(f: HoloExpr, domain: Domain, plan: SamplingPlan) -> NormalityEstimate:
    """Scan Levi-form / Kobayashi ratios over shells approaching the boundary.

    The max of levi / k_upper^2 over all samples is a certified lower bound
    on any constant C for which levi <= C * K^2 could hold; the per-shell
    trend makes divergence toward the boundary visible.  The verdict is
    numerical evidence, not proof.
    """
    n = f.dimension
    center = tuple(complex(c) for c in domain.center)
    rays = scan_rays(n, plan.points_per_shell, plan.seed)
    dirs = sphere_directions(n, plan.directions_per_point, plan.seed + 1)

    def scan_point(task):
        t, u = task
        extent = domains.ray_extent(domain, tuple(u))
        p = tuple(np.asarray(center) + (1.0 - t) * extent * u)
        out, errs = [], []
        try:
            delta = domains.boundary_distance(domain, p)
        except DomainError as exc:
            return [], [f"point {p!r}: {exc}"]
        for v in dirs:
            try:
                levi = levi_log1p_closed(f, p, tuple(v))
            except EvaluationError as exc:
                errs.append(f"point {p!r}, dir {tuple(v)!r}: {exc}")
                continue
            k_lo, k_up = kobayashi_domain_bounds(domain, p, tuple(v))
            out.append(
                ScanSample(
                    point=p,
                    direction=tuple(v),
                    levi=levi,
                    k_lower=k_lo,
                    k_upper=k_up,
                    ratio_lower=levi / (k_up * k_up),
                    ratio_upper=levi / (k_lo * k_lo),
                )
            )
        return out, (delta, errs)

    tasks = [(t, u) for t in plan.shells for u in rays]
    workers = max(1, int(os.environ.get("NORMLAB_THREADS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan_point, tasks))
    else:
        results = [scan_point(task) for task in tasks]

    samples: list[ScanSample] = []
    errors: list[str] = []
    skipped = 0
    trend: list[tuple[float, float, float]] = []
    per_point = len(rays)
    for shell_idx, t in enumerate(plan.shells):
        shell_max = 0.0
        shell_delta = math.inf
        for res, extra in results[shell_idx * per_point : (shell_idx + 1) * per_point]:
            if not res and isinstance(extra, list):
                errors.extend(extra)
                skipped += len(dirs)
                continue
            delta, errs = extra
            errors.extend(errs)
            skipped += len(errs)
            samples.extend(res)
            shell_delta = min(shell_delta, delta)
            if res:
                shell_max = max(shell_max, max(s.ratio_lower for s in res))
        trend.append((t, shell_max, shell_delta if math.isfinite(shell_delta) else 0.0))

    c_required = max((s.ratio_lower for s in samples), default=0.0)
    verdict = _trend_verdict([m for _, m, _ in trend])
    return NormalityEstimate(
        samples=tuple(samples),
        shell_trend=tuple(trend),
        c_required_lower_bound=c_required,
        verdict=verdict,
        skipped=skipped,
        errors=tuple(errors),
    )
