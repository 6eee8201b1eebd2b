"""Exact combinatorics for B2[g] sets in [0, N].

A set A is B2[g] when every integer has at most g representations a + b with
a <= b, both in A.  For the spectral side, with f(t) = sum_{a in A} e^{2 pi i a t}:

    d(n)     = #{(a, b) in A^2 : a - b = n}            (representation counts)
    s_comb   = sum_{n != 0} d(n)^2                     (solutions of a-b = c-d, a != b)
    s_dft    = (1/2N) sum_{n=-N}^{N-1} (|f(n/2N)|^2 - |A|)^2

The two are linked exactly by s_dft = s_comb + 2 d(N)^2: the discrete grid
over 2N points folds the difference residues +N and -N together, which adds a
wraparound term absent from the pure solution count.  The bound pipeline
consumes s_dft, which for every B2[g] set satisfies s_dft <= (2g-1) |A|^2.

F(g, N), the largest B2[g] subset of [0, N], is computed by depth-first
branch and bound over increasing elements with incremental pairwise-sum
counts.  Determinism: ties are broken toward the lexicographically smallest
maximal witness, in both sequential and threaded modes.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, ValidationError
from .series import CosineSeries, eval_w


@dataclass(frozen=True)
class IntSet:
    """Strictly increasing integers inside the ambient interval [0, n]."""

    elems: tuple
    n: int

    def __post_init__(self):
        elems = tuple(int(e) for e in self.elems)
        n = int(self.n)
        if n < 0:
            raise ValidationError(f"ambient endpoint must be >= 0, got {n}")
        if any(e2 <= e1 for e1, e2 in zip(elems, elems[1:])):
            raise ValidationError("elements must be strictly increasing")
        if elems and not (0 <= elems[0] and elems[-1] <= n):
            raise ValidationError(f"elements must lie in [0, {n}], got {elems}")
        object.__setattr__(self, "elems", elems)
        object.__setattr__(self, "n", n)

    @property
    def size(self) -> int:
        return len(self.elems)


@dataclass(frozen=True)
class DiffProfile:
    """counts[n] = d(n) for n in [-N, N]; zero entries are omitted."""

    counts: dict


def _sum_counts(elems, g):
    """Pairwise-sum multiplicities (a <= b), or None at the first count > g."""
    counts = {}
    for i, a in enumerate(elems):
        for b in elems[i:]:
            s = a + b
            c = counts.get(s, 0) + 1
            if c > g:
                return None
            counts[s] = c
    return counts


def is_b2g(a: IntSet, g: int) -> bool:
    """True iff every integer has at most g representations a+b, a <= b."""
    if g < 1:
        raise ValidationError(f"g must be >= 1, got {g}")
    return _sum_counts(a.elems, g) is not None


def diff_profile(a: IntSet) -> DiffProfile:
    """Exact d(n) table; d(-n) = d(n), d(0) = |A|, total mass |A|^2."""
    counts = {}
    for x in a.elems:
        for y in a.elems:
            counts[x - y] = counts.get(x - y, 0) + 1
    return DiffProfile(counts=counts)


def s_comb(a: IntSet) -> int:
    """sum_{n != 0} d(n)^2, the count of solutions to a - b = c - d, a != b."""
    profile = diff_profile(a).counts
    return sum(v * v for n, v in profile.items() if n != 0)


def _exp_sum(elems, points):
    """f(t) = sum_a exp(2 pi i a t) evaluated at an array of points."""
    if not elems:
        return np.zeros(len(points), dtype=complex)
    return np.exp(2j * np.pi * np.outer(points, np.array(elems))).sum(axis=1)


def s_dft(a: IntSet) -> float:
    """(1/2N) sum_{n=-N}^{N-1} (|f(n/2N)|^2 - |A|)^2 by direct evaluation."""
    if a.n < 1:
        raise ValidationError("s_dft needs ambient N >= 1")
    two_n = 2 * a.n
    points = np.arange(-a.n, a.n) / two_n
    f_abs2 = np.abs(_exp_sum(a.elems, points)) ** 2
    return float(np.sum((f_abs2 - a.size) ** 2) / two_n)


def d_identity_residual(a: IntSet, series: CosineSeries) -> float:
    """|sum_n d(n) w(n/N) - sum_theta b_theta |f(theta/N)|^2|.

    Both sides equal the weighted difference sum D_A(b); they are computed
    independently (counts vs exponential sums), so the residual certifies
    the spectral identity at floating accuracy.
    """
    if a.n < 1:
        raise ValidationError("identity residual needs ambient N >= 1")
    profile = diff_profile(a).counts
    lhs = 0.0
    for diff, count in sorted(profile.items()):
        lhs += count * eval_w(series, diff / a.n)
    f_abs2 = np.abs(_exp_sum(a.elems, series.freqs / a.n)) ** 2
    rhs = float(series.coeffs @ f_abs2)
    return abs(lhs - rhs)


def enumerate_b2g(g: int, n: int):
    """Yield every B2[g] subset of [0, n] as a tuple (the empty one included).

    DFS over increasing elements; the B2[g] family is subset-closed, so
    violation pruning enumerates each member exactly once.
    """
    if g < 1:
        raise ValidationError(f"g must be >= 1, got {g}")
    if n < 0:
        raise ValidationError(f"n must be >= 0, got {n}")
    sums = [0] * (2 * n + 1)
    cur = []

    def dfs(start):
        yield tuple(cur)
        for x in range(start, n + 1):
            ok = True
            for a in cur:
                if sums[a + x] + 1 > g:
                    ok = False
                    break
            if ok and sums[2 * x] + 1 > g:
                ok = False
            if ok:
                for a in cur:
                    sums[a + x] += 1
                sums[2 * x] += 1
                cur.append(x)
                yield from dfs(x + 1)
                cur.pop()
                for a in cur:
                    sums[a + x] -= 1
                sums[2 * x] -= 1

    yield from dfs(0)


class _Shared:
    """Search-wide best-so-far and node budget, shared across workers."""

    __slots__ = ("best", "best_wit", "nodes", "budget", "lock")

    def __init__(self, budget):
        self.best = 1
        self.best_wit = (0,)
        self.nodes = 0
        self.budget = math.inf if budget is None else int(budget)
        self.lock = threading.Lock()


class _BudgetHit(Exception):
    pass


def _subtree_best(g, n, prefix, shared):
    """Best (size, witness) in the subtree rooted at prefix, lex-first ties.

    Prunes a branch only when it cannot reach max(local best + 1, shared
    best): branches that can merely tie the shared best must survive so the
    lexicographic tie-break stays exact under concurrency.
    """
    sums = [0] * (2 * n + 1)
    cur = list(prefix)
    for i, a in enumerate(cur):
        for b in cur[i:]:
            sums[a + b] += 1
    local_size = len(cur)
    local_wit = tuple(cur)

    def dfs(start):
        nonlocal local_size, local_wit
        with shared.lock:
            shared.nodes += 1
            if shared.nodes > shared.budget:
                raise _BudgetHit()
            if local_size > shared.best:
                shared.best = local_size
                shared.best_wit = local_wit
            threshold = max(local_size, shared.best - 1)
        for x in range(start, n + 1):
            if len(cur) + 1 + (n - x) <= threshold:
                break  # caps shrink with x, nothing further can matter
            ok = True
            for a in cur:
                if sums[a + x] + 1 > g:
                    ok = False
                    break
            if ok and sums[2 * x] + 1 > g:
                ok = False
            if not ok:
                continue
            for a in cur:
                sums[a + x] += 1
            sums[2 * x] += 1
            cur.append(x)
            if len(cur) > local_size:
                local_size = len(cur)
                local_wit = tuple(cur)
            dfs(x + 1)
            cur.pop()
            for a in cur:
                sums[a + x] -= 1
            sums[2 * x] -= 1

    dfs(cur[-1] + 1 if cur else 0)
    return local_size, local_wit


def exhaustive_f(
    g: int, n: int, budget: int | None = None, threads: int = 1
) -> tuple[int, IntSet]:
    """Exact F(g, N) with a witness of maximal size.

    Branch and bound over increasing elements with incremental sum counts.
    budget caps the number of visited nodes; exceeding it raises BudgetError
    carrying the best size found so far (a lower bound, explicitly not
    exact).  The returned witness is the lexicographically smallest maximal
    one regardless of threads.
    """
    if g < 1:
        raise ValidationError(f"g must be >= 1, got {g}")
    if n < 0:
        raise ValidationError(f"n must be >= 0, got {n}")
    shared = _Shared(budget)
    best = (1, (0,))  # singleton {0}: lex-smallest set of size 1
    prefixes = [(x1, x2) for x1 in range(n + 1) for x2 in range(x1 + 1, n + 1)]

    def better(cand, cur):
        return cand[0] > cur[0] or (cand[0] == cur[0] and cand[1] < cur[1])

    try:
        if threads <= 1 or not prefixes:
            for prefix in prefixes:
                cand = _subtree_best(g, n, prefix, shared)
                if better(cand, best):
                    best = cand
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = pool.map(
                    lambda p: _subtree_best(g, n, p, shared), prefixes
                )
                # reduction in prefix (lex) order keeps ties deterministic
                for cand in results:
                    if better(cand, best):
                        best = cand
    except _BudgetHit:
        partial = (shared.best, shared.best_wit)
        if better(partial, best):
            best = partial
        raise BudgetError(
            f"node budget {budget} exhausted at F({g},{n}) >= {best[0]}; "
            f"best-so-far is a lower bound, NOT exact",
            size=best[0],
            witness=IntSet(elems=best[1], n=n),
            nodes=shared.nodes,
        ) from None
    return best[0], IntSet(elems=best[1], n=n)


def greedy_lower(g: int, n: int) -> IntSet:
    """Greedy B2[g] witness scanning 0..n; a cheap lower bound for F(g, n)."""
    if g < 1:
        raise ValidationError(f"g must be >= 1, got {g}")
    if n < 0:
        raise ValidationError(f"n must be >= 0, got {n}")
    sums = [0] * (2 * n + 1)
    chosen = []
    for x in range(n + 1):
        if any(sums[a + x] + 1 > g for a in chosen) or sums[2 * x] + 1 > g:
            continue
        for a in chosen:
            sums[a + x] += 1
        sums[2 * x] += 1
        chosen.append(x)
    return IntSet(elems=tuple(chosen), n=n)


def f_table(g_values, n_max: int, threads: int = 1):
    """Rows (g, N, F, witness) for every g in g_values and N = 0..n_max."""
    rows = []
    for g in g_values:
        for n in range(n_max + 1):
            size, wit = exhaustive_f(g, n, threads=threads)
            rows.append((g, n, size, wit.elems))
    return rows


@dataclass(frozen=True)
class ScanReport:
    """Outcome of an exhaustive inequality scan."""

    checked: int
    violations: int
    max_ratio: float  # max over nonempty sets of s_dft / |A|^2


def sdft_inequality_scan(g: int, n_max: int, batch: int = 50000) -> ScanReport:
    """Check s_dft(A) <= (2g-1) |A|^2 for every B2[g] set, every N <= n_max.

    The ambient N matters to s_dft, so each N in [1, n_max] gets its own full
    enumeration.  Sets are checked in batches through one vectorized DFT per
    batch; a small absolute slack (1e-9) absorbs rounding in the comparison.
    """
    checked = 0
    violations = 0
    max_ratio = 0.0
    for n in range(1, n_max + 1):
        two_n = 2 * n
        points = np.arange(-n, n) / two_n
        basis = np.exp(2j * np.pi * np.outer(np.arange(n + 1), points))
        sets = []
        for elems in enumerate_b2g(g, n):
            sets.append(elems)
            if len(sets) >= batch:
                checked, violations, max_ratio = _scan_batch(
                    sets, g, basis, two_n, checked, violations, max_ratio
                )
                sets = []
        if sets:
            checked, violations, max_ratio = _scan_batch(
                sets, g, basis, two_n, checked, violations, max_ratio
            )
    return ScanReport(checked=checked, violations=violations, max_ratio=max_ratio)


def _scan_batch(sets, g, basis, two_n, checked, violations, max_ratio):
    ind = np.zeros((len(sets), basis.shape[0]))
    for i, elems in enumerate(sets):
        if elems:
            ind[i, list(elems)] = 1.0
    f_abs2 = np.abs(ind @ basis) ** 2
    sizes = ind.sum(axis=1)
    sdft = np.sum((f_abs2 - sizes[:, None]) ** 2, axis=1) / two_n
    rhs = (2 * g - 1) * sizes**2
    violations += int(np.sum(sdft > rhs + 1e-9))
    nonempty = sizes > 0
    if np.any(nonempty):
        ratios = sdft[nonempty] / sizes[nonempty] ** 2
        max_ratio = max(max_ratio, float(ratios.max()))
    return checked + len(sets), violations, max_ratio
