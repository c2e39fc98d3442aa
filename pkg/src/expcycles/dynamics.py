"""The repeated-exponentiation dynamical system u -> g**u mod p.

The map acts on {1,...,p-1}. Three independent routes to the short-cycle
census are provided: definitional brute force (census_naive), a
vectorized scan of the exponent table (census_table), and a full
functional-graph decomposition (census_graph). They must agree; the test
suite holds them to that.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from .modarith import check_prime_modulus

# Byte budget for whole-graph passes (table + per-node words).
DEFAULT_MEM_BUDGET = 2**31

# Largest modulus for which int64 products a*b with a, b < p stay exact.
_NUMPY_MOD_LIMIT = math.isqrt(2**63 - 1)


class MemoryBudgetError(RuntimeError):
    """A whole-graph pass would exceed the configured memory budget."""


@dataclass(frozen=True)
class ExpMap:
    """The pair (p, g) acting on {1,...,p-1} by u -> g**u mod p.

    g is reduced mod p on construction; g == 0 (mod p) is rejected, so
    gcd(g, p) = 1 always holds and the image never contains 0.
    """

    p: int
    g: int

    def __post_init__(self) -> None:
        check_prime_modulus(self.p)
        g = self.g % self.p
        if g == 0:
            raise ValueError("g must not be divisible by p")
        object.__setattr__(self, "g", g)


@dataclass(frozen=True)
class OrbitRecord:
    """Tail/cycle structure of a single orbit.

    Iterating tail_length steps from start lands on entry_point, the
    first cyclic element; cycle_length more steps return to it.
    """

    start: int
    tail_length: int
    cycle_length: int
    entry_point: int


@dataclass(frozen=True)
class CycleCensus:
    """Period counts for k = 1..k_max (index 0 of each list is unused).

    n_dividing[k] counts starting values whose k-th iterate returns to
    the start (period divides k); n_least_period[d] counts points of
    least period exactly d.
    """

    k_max: int
    n_dividing: tuple[int, ...]
    n_least_period: tuple[int, ...]


@dataclass(frozen=True)
class FunctionalGraphSummary:
    component_count: int
    cyclic_point_count: int
    cycle_length_multiset: tuple[int, ...]  # sorted ascending
    max_tail_length: int
    is_permutation: bool


def apply(m: ExpMap, u: int) -> int:
    """g**u mod p; u must lie in {1,...,p-1}."""
    if not 1 <= u < m.p:
        raise ValueError(f"u={u} outside the domain {{1,...,{m.p - 1}}}")
    return pow(m.g, u, m.p)


def iterate(m: ExpMap, u0: int, k: int) -> int:
    """The k-th iterate of u0; iterate(m, u0, 0) == u0."""
    if not 1 <= u0 < m.p:
        raise ValueError(f"u0={u0} outside the domain {{1,...,{m.p - 1}}}")
    if k < 0:
        raise ValueError("k must be >= 0")
    u = u0
    for _ in range(k):
        u = pow(m.g, u, m.p)
    return u


def orbit(m: ExpMap, u0: int) -> OrbitRecord:
    """Tail length, cycle length and entry point of the orbit of u0.

    Brent's cycle search: constant memory, then an exact tail resolution
    pass.
    """
    if not 1 <= u0 < m.p:
        raise ValueError(f"u0={u0} outside the domain {{1,...,{m.p - 1}}}")
    p, g = m.p, m.g
    power = lam = 1
    tortoise = u0
    hare = pow(g, u0, p)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = pow(g, hare, p)
        lam += 1
    hare = u0
    for _ in range(lam):
        hare = pow(g, hare, p)
    mu = 0
    tortoise = u0
    while tortoise != hare:
        tortoise = pow(g, tortoise, p)
        hare = pow(g, hare, p)
        mu += 1
    return OrbitRecord(start=u0, tail_length=mu, cycle_length=lam, entry_point=tortoise)


def _census_range(args: tuple[int, int, int, int, int]) -> tuple[list[int], list[int]]:
    """Census counts over the starting values lo <= u0 < hi (one worker's share)."""
    p, g, lo, hi, k_max = args
    n_div = [0] * (k_max + 1)
    n_least = [0] * (k_max + 1)
    for u in range(lo, hi):
        v = u
        least = 0
        for k in range(1, k_max + 1):
            v = pow(g, v, p)
            if v == u:
                n_div[k] += 1
                if least == 0:
                    least = k
        if least:
            n_least[least] += 1
    return n_div, n_least


def census_naive(m: ExpMap, k_max: int, workers: int = 1) -> CycleCensus:
    """Count u0 with u_k == u0 for each k <= k_max by direct iteration.

    The definitional route: O(p * k_max) map applications, O(1) extra
    memory per worker. {1,...,p-1} is split into contiguous chunks whose
    counts merge by summation, so the result never depends on workers.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    p, g = m.p, m.g
    if workers == 1:
        n_div, n_least = _census_range((p, g, 1, p, k_max))
    else:
        bounds = [1 + (p - 1) * i // workers for i in range(workers + 1)]
        tasks = [(p, g, bounds[i], bounds[i + 1], k_max) for i in range(workers)]
        with Pool(workers) as pool:
            parts = pool.map(_census_range, tasks)
        n_div = [sum(part[0][k] for part in parts) for k in range(k_max + 1)]
        n_least = [sum(part[1][k] for part in parts) for k in range(k_max + 1)]
    return CycleCensus(k_max, tuple(n_div), tuple(n_least))


def _pow_range(base: int, count: int, p: int) -> np.ndarray:
    """[base**0, ..., base**(count-1)] mod p as int64, by doubling blocks."""
    out = np.empty(count, dtype=np.int64)
    if count == 0:
        return out
    out[0] = 1 % p
    base %= p
    filled = 1
    while filled < count:
        take = min(filled, count - filled)
        mult = pow(base, filled, p)
        np.multiply(out[:take], mult, out=out[filled : filled + take])
        out[filled : filled + take] %= p
        filled += take
    return out


def exp_table(m: ExpMap) -> np.ndarray | list[int]:
    """Table T with T[u] = g**u mod p for u in 1..p-1; T[0] is a 0 sentinel.

    Vectorized baby/giant block construction when int64 products are
    exact; plain running-product list for larger p.
    """
    p, g = m.p, m.g
    if p <= _NUMPY_MOD_LIMIT:
        b = math.isqrt(p) + 1
        baby = _pow_range(g, b, p)
        giants = _pow_range(pow(g, b, p), (p + b - 1) // b, p)
        table = (giants[:, None] * baby[None, :]) % p
        table = table.reshape(-1)[:p].copy()
        table[0] = 0
        return table
    table = [0] * p
    v = 1
    for u in range(1, p):
        v = v * g % p
        table[u] = v
    return table


def _invert_dividing(n_div: list[int], k_max: int) -> list[int]:
    """Least-period counts from period-dividing counts (n_div[d] = sum over e|d)."""
    n_least = [0] * (k_max + 1)
    for d in range(1, k_max + 1):
        n_least[d] = n_div[d] - sum(n_least[e] for e in range(1, d) if d % e == 0)
    return n_least


def census_table(
    m: ExpMap, k_max: int, table: np.ndarray | list[int] | None = None
) -> CycleCensus:
    """CycleCensus via k-fold composition of the exponent table.

    Counting semantics identical to census_naive; this is the fast path
    the bound sweeps use.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    p = m.p
    if table is None:
        table = exp_table(m)
    n_div = [0] * (k_max + 1)
    if isinstance(table, np.ndarray):
        base = np.arange(1, p, dtype=np.int64)
        cur = base
        for k in range(1, k_max + 1):
            cur = table[cur]
            n_div[k] = int(np.count_nonzero(cur == base))
    else:
        for u in range(1, p):
            v = u
            for k in range(1, k_max + 1):
                v = table[v]
                if v == u:
                    n_div[k] += 1
    return CycleCensus(k_max, tuple(n_div), tuple(_invert_dividing(n_div, k_max)))


def decompose_table(table: list[int], lo: int) -> tuple[list[int], list[int], list[int]]:
    """Functional-graph decomposition of node -> table[node] on {lo,...,len-1}.

    Returns (cycle_lengths, dist, comp): dist[u] is the number of steps
    from u to the first cyclic node (0 on cycles), comp[u] the id of the
    owning cycle. Iterative, one visit per node.
    """
    n = len(table)
    dist = [-1] * n
    comp = [-1] * n
    cycle_lengths: list[int] = []
    for s in range(lo, n):
        if dist[s] >= 0:
            continue
        path: list[int] = []
        pos: dict[int, int] = {}
        u = s
        while dist[u] < 0 and u not in pos:
            pos[u] = len(path)
            path.append(u)
            u = table[u]
        if dist[u] >= 0:
            cid = comp[u]
            base = dist[u]
            size = len(path)
            for i, x in enumerate(path):
                dist[x] = base + size - i
                comp[x] = cid
        else:
            j = pos[u]
            cid = len(cycle_lengths)
            cycle_lengths.append(len(path) - j)
            for x in path[j:]:
                dist[x] = 0
                comp[x] = cid
            for i in range(j):
                dist[path[i]] = j - i
                comp[path[i]] = cid
    return cycle_lengths, dist, comp


def _check_budget(p: int, mem_budget: int) -> None:
    # table + tolist copy + dist/comp lists, roughly 7 words per node
    if 56 * p > mem_budget:
        raise MemoryBudgetError(
            f"p={p} needs ~{56 * p} bytes for a whole-graph pass, budget {mem_budget}"
        )


def census_graph(
    m: ExpMap,
    k_max: int | None = None,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> tuple[FunctionalGraphSummary, CycleCensus]:
    """Full functional-graph decomposition and the census derived from it.

    One status pass over {1,...,p-1}; least-period counts come from the
    cycle-length multiset (each cycle of length L contributes L points of
    least period L) and n_dividing[k] sums those over divisors of k.
    k_max defaults to the longest cycle length.
    """
    if k_max is not None and k_max < 1:
        raise ValueError("k_max must be >= 1")
    p = m.p
    _check_budget(p, mem_budget)
    table = exp_table(m)
    tl = table.tolist() if isinstance(table, np.ndarray) else table
    cycle_lengths, dist, _comp = decompose_table(tl, 1)
    least = Counter()
    for length in cycle_lengths:
        least[length] += length
    max_tail = max(dist[1:])
    cyclic_count = sum(cycle_lengths)
    summary = FunctionalGraphSummary(
        component_count=len(cycle_lengths),
        cyclic_point_count=cyclic_count,
        cycle_length_multiset=tuple(sorted(cycle_lengths)),
        max_tail_length=max_tail,
        is_permutation=(max_tail == 0),
    )
    if k_max is None:
        k_max = max(least)
    n_div = [0] * (k_max + 1)
    n_least = [0] * (k_max + 1)
    for d, count in least.items():
        if d <= k_max:
            n_least[d] = count
        for k in range(d, k_max + 1):
            if k % d == 0:
                n_div[k] += count
    census = CycleCensus(k_max, tuple(n_div), tuple(n_least))
    return summary, census


def fixed_points(m: ExpMap) -> set[int]:
    """{u : g**u == u (mod p)}; its cardinality is the k=1 census entry."""
    p, g = m.p, m.g
    if p <= _NUMPY_MOD_LIMIT and 8 * p <= DEFAULT_MEM_BUDGET:
        table = exp_table(m)
        hits = np.nonzero(table[1:] == np.arange(1, p, dtype=np.int64))[0]
        return {int(i) + 1 for i in hits}
    out = set()
    v = 1
    for u in range(1, p):
        v = v * g % p
        if v == u:
            out.add(u)
    return out


def fixed_point_counts_all_bases(p: int) -> np.ndarray:
    """counts[g] = #{u : g**u == u (mod p)} for every g in 1..p-1.

    Column recurrence over u: the vector (g**u)_g for consecutive u is an
    elementwise multiply by (g)_g. Intended for exhaustive small-p
    sweeps; requires int64-exact products.
    """
    check_prime_modulus(p)
    if p > _NUMPY_MOD_LIMIT:
        raise ValueError(f"p={p} too large for the vectorized all-bases sweep")
    gs = np.arange(p, dtype=np.int64)
    col = np.ones(p, dtype=np.int64)
    counts = np.zeros(p, dtype=np.int64)
    for u in range(1, p):
        col = col * gs % p
        counts += col == u
    counts[0] = 0
    return counts
