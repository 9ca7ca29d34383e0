"""Balanced bipartite graphs on the vertices of K_{n,n} and their predicates.

A graph is stored as one bitmask per left vertex: bit j of ``rows[i]`` means
the edge (a_{i+1}, b_{j+1}) is present.  Vertex indices are 0-based
internally and 1-based in every file format and CLI surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from ._errors import SizeLimitError

# Hard cap on the side size; exhaustive oracles enforce much smaller limits.
N_MAX = 32

# Cap for the vertex-cover / neighbourhood enumerations in hetyei_conditions.
HETYEI_N_MAX = 5


@dataclass(frozen=True)
class BipartiteGraph:
    """Immutable balanced bipartite graph over the vertices of K_{n,n}."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"side size must be positive, got {self.n}")
        if self.n > N_MAX:
            raise SizeLimitError("n", self.n, N_MAX)
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {i + 1} has a bit index >= n={self.n}")

    @classmethod
    def empty(cls, n: int) -> "BipartiteGraph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "BipartiteGraph":
        full = (1 << n) - 1
        return cls(n, (full,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        """Build from 1-based (i, j) edge pairs."""
        rows = [0] * n
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge ({i},{j}) out of range for n={n}")
            rows[i - 1] |= 1 << (j - 1)
        return cls(n, tuple(rows))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "BipartiteGraph":
        """Build from an n^2-bit edge mask; bit i*n+j is the 0-based edge (i, j)."""
        full = (1 << n) - 1
        return cls(n, tuple((mask >> (i * n)) & full for i in range(n)))

    @property
    def mask(self) -> int:
        """Canonical n^2-bit edge key (row-major)."""
        m = 0
        for i, row in enumerate(self.rows):
            m |= row << (i * self.n)
        return m

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as 1-based (i, j) pairs in row-major order."""
        out = []
        for i, row in enumerate(self.rows):
            r = row
            while r:
                j = (r & -r).bit_length() - 1
                out.append((i + 1, j + 1))
                r &= r - 1
        return out

    def has_edge(self, i: int, j: int) -> bool:
        """Test a 1-based edge."""
        return bool(self.rows[i - 1] >> (j - 1) & 1)

    def transpose(self) -> "BipartiteGraph":
        """Swap the two bipartitions."""
        cols = [0] * self.n
        for i, row in enumerate(self.rows):
            r = row
            while r:
                j = (r & -r).bit_length() - 1
                cols[j] |= 1 << i
                r &= r - 1
        return BipartiteGraph(self.n, tuple(cols))

    def __str__(self) -> str:
        lines = [str(self.n)]
        for row in self.rows:
            lines.append("".join("1" if row >> j & 1 else "0" for j in range(self.n)))
        return "\n".join(lines)


def parse_graph(text: str) -> BipartiteGraph:
    """Parse the graph text format: line 1 is n, then n rows of n chars in {0,1}."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph file")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be n, got {lines[0]!r}") from None
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} rows after the first line, got {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:]):
        if len(line) != n:
            raise ValueError(f"row {i + 1} has length {len(line)}, expected {n}")
        if set(line) - {"0", "1"}:
            raise ValueError(f"row {i + 1} contains characters outside {{0,1}}")
        rows.append(sum(1 << j for j, ch in enumerate(line) if ch == "1"))
    return BipartiteGraph(n, tuple(rows))


def complement(g: BipartiteGraph) -> BipartiteGraph:
    """Edge present iff absent in g."""
    full = (1 << g.n) - 1
    return BipartiteGraph(g.n, tuple(row ^ full for row in g.rows))


def _match_rows(n: int, rows: tuple[int, ...]) -> bool:
    """Perfect-matching test by simple augmenting-path search over row masks."""
    match_of_col = [-1] * n

    def augment(i: int, visited: int) -> tuple[bool, int]:
        r = rows[i] & ~visited
        while r:
            j = (r & -r).bit_length() - 1
            r &= r - 1
            visited |= 1 << j
            owner = match_of_col[j]
            if owner == -1:
                match_of_col[j] = i
                return True, visited
            ok, visited = augment(owner, visited)
            if ok:
                match_of_col[j] = i
                return True, visited
        return False, visited

    for i in range(n):
        ok, _ = augment(i, 0)
        if not ok:
            return False
    return True


def has_perfect_matching(g: BipartiteGraph) -> bool:
    """True iff n pairwise-disjoint edges cover all 2n vertices."""
    # Hall-style quick rejection: any empty row kills the matching.
    if any(row == 0 for row in g.rows):
        return False
    return _match_rows(g.n, g.rows)


def connected_components(g: BipartiteGraph) -> int:
    """Number of components of the graph on all 2n vertices (isolated count)."""
    n = g.n
    seen_left = 0
    seen_right = 0
    count = 0
    cols = g.transpose().rows
    for start in range(n):
        if seen_left >> start & 1:
            continue
        count += 1
        frontier_left = 1 << start
        frontier_right = 0
        seen_left |= frontier_left
        while frontier_left or frontier_right:
            reach_right = 0
            fl = frontier_left
            while fl:
                i = (fl & -fl).bit_length() - 1
                fl &= fl - 1
                reach_right |= g.rows[i]
            frontier_right = reach_right & ~seen_right
            seen_right |= frontier_right
            reach_left = 0
            fr = frontier_right
            while fr:
                j = (fr & -fr).bit_length() - 1
                fr &= fr - 1
                reach_left |= cols[j]
            frontier_left = reach_left & ~seen_left
            seen_left |= frontier_left
    # Right vertices never reached are isolated components of their own.
    count += n - seen_right.bit_count()
    return count


def cyclomatic_number(g: BipartiteGraph) -> int:
    """|E| - |V| + #components; zero exactly on forests."""
    return g.edge_count - 2 * g.n + connected_components(g)


def _has_pm_with_forced_edge(g: BipartiteGraph, i: int, j: int) -> bool:
    """Perfect matching containing the 0-based edge (i, j)?"""
    n = g.n
    if n == 1:
        return True
    colbit = 1 << j
    rows = tuple(g.rows[r] & ~colbit for r in range(n) if r != i)
    if any(row == 0 for row in rows):
        return False
    # Row i is replaced by a dummy accepting anything; in any matching the
    # dummy is forced onto column j, so this solves the reduced subproblem.
    return _match_rows(n, rows + ((1 << n) - 1,))


def is_matching_covered(g: BipartiteGraph) -> bool:
    """True iff g has a perfect matching and every edge lies in one.

    The empty graph is not matching-covered: PM(g) must be nonempty.
    """
    if not has_perfect_matching(g):
        return False
    for i in range(g.n):
        r = g.rows[i]
        while r:
            j = (r & -r).bit_length() - 1
            r &= r - 1
            if not _has_pm_with_forced_edge(g, i, j):
                return False
    return True


def is_elementary(g: BipartiteGraph) -> bool:
    """Connected and matching-covered."""
    return connected_components(g) == 1 and is_matching_covered(g)


@lru_cache(maxsize=None)
def _elementary_by_mask(n: int, mask: int) -> bool:
    return is_elementary(BipartiteGraph.from_mask(n, mask))


@lru_cache(maxsize=None)
def _matching_covered_by_mask(n: int, mask: int) -> bool:
    return is_matching_covered(BipartiteGraph.from_mask(n, mask))


@dataclass(frozen=True)
class HetyeiConditions:
    """The five equivalent characterizations of elementary bipartite graphs."""

    elementary: bool
    two_minimum_vertex_covers: bool
    strict_neighbourhood_surplus: bool
    pm_after_vertex_deletion: bool
    connected_all_edges_allowed: bool

    def as_tuple(self) -> tuple[bool, bool, bool, bool, bool]:
        return (
            self.elementary,
            self.two_minimum_vertex_covers,
            self.strict_neighbourhood_surplus,
            self.pm_after_vertex_deletion,
            self.connected_all_edges_allowed,
        )

    def all_equal(self) -> bool:
        return len(set(self.as_tuple())) == 1


def _neighbourhood(g: BipartiteGraph, left_set: int) -> int:
    acc = 0
    s = left_set
    while s:
        i = (s & -s).bit_length() - 1
        s &= s - 1
        acc |= g.rows[i]
    return acc


def _minimum_vertex_covers(g: BipartiteGraph) -> set[tuple[int, int]]:
    """All minimum vertex covers as (left mask, right mask) pairs."""
    n = g.n
    edges = [(i, j) for i in range(n) for j in range(n) if g.rows[i] >> j & 1]
    best_size = None
    best: set[tuple[int, int]] = set()
    verts = list(range(2 * n))
    for size in range(0, 2 * n + 1):
        if best_size is not None:
            break
        for combo in combinations(verts, size):
            lm = 0
            rm = 0
            for v in combo:
                if v < n:
                    lm |= 1 << v
                else:
                    rm |= 1 << (v - n)
            if all(lm >> i & 1 or rm >> j & 1 for i, j in edges):
                best.add((lm, rm))
        if best:
            best_size = size
    return best


def _pm_after_deleting(g: BipartiteGraph, i: int, j: int) -> bool:
    """Perfect matching on the vertices of g - a_{i+1} - b_{j+1}?"""
    n = g.n
    if n == 1:
        return True
    colbit = 1 << j
    rows = tuple(g.rows[r] & ~colbit for r in range(n) if r != i)
    if any(row == 0 for row in rows):
        return False
    return _match_rows(n, rows + ((1 << n) - 1,))


def hetyei_conditions(g: BipartiteGraph) -> HetyeiConditions:
    """Evaluate the five elementary-graph conditions independently.

    Used only for cross-validation at n <= 5; the subset enumerations in
    conditions (2) and (3) are exponential.  Condition (3) carries an
    explicit nonempty-edge-set guard so the equivalence also holds for the
    edgeless n=1 graph, where the surplus quantifier is vacuous.
    """
    n = g.n
    if n > HETYEI_N_MAX:
        raise SizeLimitError("n", n, HETYEI_N_MAX)

    cond1 = is_elementary(g)

    full = (1 << n) - 1
    covers = _minimum_vertex_covers(g)
    cond2 = covers == {(full, 0), (0, full)}

    cond3 = g.edge_count > 0 and all(
        _neighbourhood(g, x).bit_count() > x.bit_count()
        for x in range(1, full)  # nonempty proper subsets of the left side
    )

    if n == 1:
        cond4 = g.rows[0] == 1  # G = K_2
    else:
        cond4 = all(
            _pm_after_deleting(g, i, j) for i in range(n) for j in range(n)
        )

    cond5 = connected_components(g) == 1 and all(
        _has_pm_with_forced_edge(g, i, j)
        for i in range(n)
        for j in range(n)
        if g.rows[i] >> j & 1
    )

    return HetyeiConditions(cond1, cond2, cond3, cond4, cond5)


def all_graphs(n: int) -> Iterator[BipartiteGraph]:
    """Every balanced bipartite graph on K_{n,n}'s vertices, by edge mask."""
    for mask in range(1 << (n * n)):
        yield BipartiteGraph.from_mask(n, mask)
