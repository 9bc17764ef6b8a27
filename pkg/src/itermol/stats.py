"""Rank statistics used by the analysis commands."""

import math

from scipy.stats import t as t_dist

from .errors import LengthMismatchError


def average_ranks(values) -> list[float]:
    """1-based ranks; tied values share the average of their rank block."""
    values = list(values)
    order = sorted(range(len(values)), key=lambda i: (values[i], i))
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def spearman(xs, ys) -> tuple[float, float]:
    """Spearman rank correlation with a two-sided t-approximation p-value."""
    xs = list(xs)
    ys = list(ys)
    if len(xs) != len(ys):
        raise LengthMismatchError(f"length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 3:
        raise ValueError("spearman needs at least 3 observations")
    rx = average_ranks(xs)
    ry = average_ranks(ys)
    mx = sum(rx) / n
    my = sum(ry) / n
    cov = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    vx = sum((a - mx) ** 2 for a in rx)
    vy = sum((b - my) ** 2 for b in ry)
    if vx == 0.0 or vy == 0.0:
        return math.nan, math.nan
    rho = cov / math.sqrt(vx * vy)
    rho = max(-1.0, min(1.0, rho))
    if abs(rho) == 1.0:
        return rho, 0.0
    stat = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    p = 2.0 * float(t_dist.sf(abs(stat), n - 2))
    return rho, p
