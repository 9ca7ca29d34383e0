"""Exact closed-form dual coefficients.

The coefficient of a totally ordered graph with representing sequence
(d_1, k_1), ..., (d_t, k_t) is

    binomial(n - k_{t-1} - 1, n - d_t)
        * prod_{i=1..t-1} f(d_{i+1} - k_{i-1}, d_i - k_{i-1}, k_i - k_{i-1})

under the convention binomial(a, b) = 0 unless 0 <= b <= a; graphs that are
not totally ordered have coefficient 0.  All values are exact arbitrary
precision integers.
"""

from __future__ import annotations

import math

from .bigraph import BipartiteGraph
from .ordered import Block, RepresentingSequence


def binomial(a: int, b: int) -> int:
    """binomial(a, b) with value 0 outside 0 <= b <= a (no generalization)."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def f_factor(n: int, d: int, k: int) -> int:
    """The per-block factor: C(n-1, k) for d <= 0, else -C(n-d-1, k-d)*C(k-1, d-1).

    Degenerate inputs make one of the binomials vanish, so the degenerate
    sequence case needs no separate handling.
    """
    if d <= 0:
        return binomial(n - 1, k)
    return -binomial(n - d - 1, k - d) * binomial(k - 1, d - 1)


def block_coefficient(block: Block) -> int:
    """Dual coefficient of an <n, d, k>-block."""
    return f_factor(block.n, block.d, block.k)


def sequence_coefficient(s: RepresentingSequence) -> int:
    """Dual coefficient of the sorted ordered graph with sequence s."""
    n = s.n
    t = s.t
    value = binomial(n - s.k(t - 1) - 1, n - s.d(t))
    for i in range(1, t):
        if value == 0:
            return 0
        value *= f_factor(
            s.d(i + 1) - s.k(i - 1),
            s.d(i) - s.k(i - 1),
            s.k(i) - s.k(i - 1),
        )
    return value


def dual_coefficient(g: BipartiteGraph) -> int:
    """Coefficient of g's monomial in the dual matching polynomial.

    Zero whenever the left neighbour sets do not form a chain; otherwise the
    closed form evaluated on the degree profile.  Agrees with subset-lattice
    inversion on every graph with n <= 4 (exhaustively tested).
    """
    degrees = sorted(row.bit_count() for row in g.rows)
    rows = sorted(g.rows, key=lambda r: r.bit_count())
    if any(a & ~b for a, b in zip(rows, rows[1:])):
        return 0
    n = g.n
    # Run-length encode the ascending degree profile into (d_i, k_i) pairs.
    pairs = []
    for i, deg in enumerate(degrees):
        if pairs and pairs[-1][0] == deg:
            pairs[-1] = (deg, i + 1)
        else:
            pairs.append((deg, i + 1))
    value = sequence_coefficient(RepresentingSequence(n, tuple(pairs)))
    assert abs(value) <= 1 << (2 * n), f"coefficient bound violated for {g}"
    return value
