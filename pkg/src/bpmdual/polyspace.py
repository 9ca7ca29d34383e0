"""The dual polynomial as an explicit object: enumeration, counting, bounds.

Terms are keyed by canonical n^2-bit edge masks (bit i*n+j is the 0-based
edge (i, j)); coefficients are exact integers and zero coefficients are
never stored.  Serialized dumps sort terms by (degree, mask) so output is
reproducible byte for byte.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterator

from ._errors import DimensionMismatchError, SizeLimitError
from .bigraph import BipartiteGraph
from .coeff import binomial, sequence_coefficient
from .ordered import RepresentingSequence

ENUMERATION_N_MAX = 10
MATERIALIZE_N_MAX = 4


@dataclass(frozen=True)
class DualPolynomial:
    """Exact multilinear polynomial: edge-set masks -> integer coefficients."""

    n: int
    terms: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if any(c == 0 for c in self.terms.values()):
            raise ValueError("zero coefficients must not be stored")

    def coefficient(self, g: BipartiteGraph) -> int:
        if g.n != self.n:
            raise DimensionMismatchError(f"polynomial has n={self.n}, graph n={g.n}")
        return self.terms.get(g.mask, 0)

    @property
    def constant_term(self) -> int:
        return self.terms.get(0, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_items(self) -> list[tuple[int, int]]:
        """(mask, coefficient) pairs ordered by (degree, mask)."""
        return sorted(self.terms.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))

    def _mask_edges(self, mask: int) -> list[tuple[int, int]]:
        return BipartiteGraph.from_mask(self.n, mask).edges()

    def to_tsv(self) -> str:
        lines = []
        for mask, c in self.sorted_items():
            if mask == 0:
                edge_str = "-"
            else:
                edge_str = ",".join(f"({i},{j})" for i, j in self._mask_edges(mask))
            lines.append(f"{c}\t{edge_str}")
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json(self) -> str:
        terms = [
            {"coeff": str(c), "edges": [[i, j] for i, j in self._mask_edges(mask)]}
            for mask, c in self.sorted_items()
        ]
        return json.dumps({"n": self.n, "terms": terms}, separators=(",", ":"))

    @staticmethod
    def _edge_bit(i: int, j: int, n: int) -> int:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"edge ({i},{j}) out of range for n={n}")
        return 1 << ((i - 1) * n + (j - 1))

    @classmethod
    def from_tsv(cls, text: str, n: int) -> "DualPolynomial":
        terms: dict[int, int] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            coeff_str, _, edge_str = line.partition("\t")
            c = int(coeff_str)
            mask = 0
            if edge_str != "-":
                for chunk in edge_str.split("),("):
                    i_str, _, j_str = chunk.strip("()").partition(",")
                    mask |= cls._edge_bit(int(i_str), int(j_str), n)
            if c:
                terms[mask] = c
        return cls(n, terms)

    @classmethod
    def from_json(cls, text: str) -> "DualPolynomial":
        data = json.loads(text)
        n = data["n"]
        terms: dict[int, int] = {}
        for t in data["terms"]:
            mask = 0
            for i, j in t["edges"]:
                mask |= cls._edge_bit(i, j, n)
            c = int(t["coeff"])
            if c:
                terms[mask] = c
        return cls(n, terms)


def evaluate(p: DualPolynomial, x: BipartiteGraph) -> int:
    """Multilinear evaluation at a 0/1 input: sum coefficients of contained terms."""
    if p.n != x.n:
        raise DimensionMismatchError(f"polynomial has n={p.n}, input has n={x.n}")
    xm = x.mask
    return sum(c for mask, c in p.terms.items() if mask & ~xm == 0)


def enumerate_sequences(
    n: int, nonzero_only: bool = False
) -> Iterator[RepresentingSequence]:
    """Yield every representing sequence for side n, in lexicographic order
    of the flattened (d_1, k_1, d_2, k_2, ...) tuple."""
    if n > ENUMERATION_N_MAX:
        raise SizeLimitError("n", n, ENUMERATION_N_MAX)

    def extend(prefix: list[tuple[int, int]], last_d: int, last_k: int):
        for d in range(last_d + 1, n + 1):
            for k in range(last_k + 1, n + 1):
                if k == n:
                    yield RepresentingSequence(n, tuple(prefix + [(d, k)]))
                else:
                    yield from extend(prefix + [(d, k)], d, k)

    for s in extend([], -1, 0):
        if not nonzero_only or sequence_coefficient(s) != 0:
            yield s


def _multinomial(n: int, parts: list[int]) -> int:
    assert sum(parts) == n
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


def labeled_count(s: RepresentingSequence) -> int:
    """Number of labeled graphs obtainable from the decoded sorted graph by
    relabeling each bipartition separately."""
    n = s.n
    row_runs = [s.k(i) - s.k(i - 1) for i in range(1, s.t + 1)]
    col_runs = [s.d(1)] + [s.d(i + 1) - s.d(i) for i in range(1, s.t + 1)]
    return _multinomial(n, row_runs) * _multinomial(n, col_runs)


def monomial_count(n: int) -> int:
    """Number of monomials of the dual polynomial, by orbit counting."""
    if n > ENUMERATION_N_MAX:
        raise SizeLimitError("n", n, ENUMERATION_N_MAX)
    return sum(labeled_count(s) for s in enumerate_sequences(n, nonzero_only=True))


def max_abs_coefficient(n: int) -> int:
    """Largest coefficient magnitude over all monomials."""
    if n > ENUMERATION_N_MAX:
        raise SizeLimitError("n", n, ENUMERATION_N_MAX)
    return max(abs(sequence_coefficient(s)) for s in enumerate_sequences(n))


def materialize(n: int) -> DualPolynomial:
    """Build the full labeled polynomial by scanning all 2^(n^2) edge sets."""
    if n > MATERIALIZE_N_MAX:
        raise SizeLimitError("n", n, MATERIALIZE_N_MAX)
    from .coeff import dual_coefficient

    terms: dict[int, int] = {}
    for mask in range(1 << (n * n)):
        c = dual_coefficient(BipartiteGraph.from_mask(n, mask))
        if c:
            terms[mask] = c
    return DualPolynomial(n, terms)


@dataclass(frozen=True)
class BoundReport:
    """Monomial-count and coefficient-magnitude bounds for one side size."""

    n: int
    monomial_count: int
    count_lower: int  # (n!)^2
    count_upper: int  # (n+2)^(2n+2)
    max_abs_coefficient: int
    coeff_upper: int  # 2^(2n)
    coeff_lower: int  # binomial(n-1, floor(n/2)), the half biclique
    method: str = "sequence-enumeration"

    @property
    def count_in_bounds(self) -> bool:
        return self.count_lower <= self.monomial_count <= self.count_upper

    @property
    def coeff_in_bounds(self) -> bool:
        return self.coeff_lower <= self.max_abs_coefficient <= self.coeff_upper

    @property
    def log2_count_ratio(self) -> float:
        """log2(count) / (2n log2 n); reported, never asserted."""
        if self.n < 2:
            return float("nan")
        return math.log2(self.monomial_count) / (2 * self.n * math.log2(self.n))


def bound_report(n: int) -> BoundReport:
    return BoundReport(
        n=n,
        monomial_count=monomial_count(n),
        count_lower=math.factorial(n) ** 2,
        count_upper=(n + 2) ** (2 * n + 2),
        max_abs_coefficient=max_abs_coefficient(n),
        coeff_upper=1 << (2 * n),
        coeff_lower=binomial(n - 1, n // 2),
    )
