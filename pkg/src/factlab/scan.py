"""Vectorized exhaustive scans over P^n(F_p).

The coordinate table replicates enumerate_projective's order exactly
(pivot ascending, then lex on free coordinates); chunked evaluation keeps
memory bounded and gives the thread pool disjoint work items whose results
are merged in chunk order, so thread count never changes output.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence

import numpy as np

from .errors import TooLarge
from .poly import HomoPoly
from .projgeom import DEFAULT_SCAN_CAP, projective_count

_CHUNK = 1 << 16


def coords_table(n: int, p: int, scan_cap: int = DEFAULT_SCAN_CAP) -> np.ndarray:
    """(N, n+1) int64 table of canonical representatives of P^n(F_p)."""
    total = projective_count(n, p)
    if total > scan_cap:
        raise TooLarge(f"P^{n}(F_{p}) has {total} points > cap {scan_cap}")
    blocks = []
    for pivot in range(n + 1):
        free = n - pivot
        count = p**free
        block = np.zeros((count, n + 1), dtype=np.int64)
        block[:, pivot] = 1
        idx = np.arange(count, dtype=np.int64)
        for k in range(free):
            div = p ** (free - 1 - k)
            block[:, pivot + 1 + k] = (idx // div) % p
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def eval_on_points(f: HomoPoly, pts: np.ndarray, p: int) -> np.ndarray:
    """Exact evaluation of f at every row of pts, mod p."""
    out = np.zeros(pts.shape[0], dtype=np.int64)
    pow_cache = {}
    for mono, coeff in f.terms.items():
        term = np.full(pts.shape[0], int(coeff) % p, dtype=np.int64)
        for var, e in enumerate(mono):
            if not e:
                continue
            key = (var, e)
            if key not in pow_cache:
                base = pts[:, var]
                acc = base.copy()
                for _ in range(e - 1):
                    acc = acc * base % p
                pow_cache[key] = acc
            term = term * pow_cache[key] % p
        out = (out + term) % p
    return out


def common_zeros(
    polys: Sequence[HomoPoly],
    pts: np.ndarray,
    p: int,
    threads: int = 1,
    extra_predicate: Callable[[np.ndarray], np.ndarray] = None,
) -> np.ndarray:
    """Rows of pts where every poly vanishes (and extra_predicate holds).

    Polys are applied as successive filters so later ones only evaluate on
    survivors.  Returns the surviving rows in their original order.
    """

    def work(block: np.ndarray) -> np.ndarray:
        alive = block
        for f in polys:
            if alive.shape[0] == 0:
                return alive
            vals = eval_on_points(f, alive, p)
            alive = alive[vals == 0]
        if extra_predicate is not None and alive.shape[0]:
            alive = alive[extra_predicate(alive)]
        return alive

    chunks = [pts[i:i + _CHUNK] for i in range(0, pts.shape[0], _CHUNK)]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results: List[np.ndarray] = list(pool.map(work, chunks))
    else:
        results = [work(c) for c in chunks]
    nonempty = [r for r in results if r.shape[0]]
    if not nonempty:
        return pts[:0]
    return np.concatenate(nonempty, axis=0)
