"""Singular loci of hypersurfaces and codimension-2 complete intersections
over prime fields, by exhaustive scan, plus ordinary-double-point checks.

The scan certifies F_p-rational singular points only; every report built on
top of it is mod-p evidence, not a characteristic-0 proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Tuple

import numpy as np

from .errors import CharDividesDegree, CharTooSmall, TooLarge
from .fields import FieldSpec
from .linalg import nullspace, rank as matrix_rank
from .poly import (
    HomoPoly,
    eval_poly,
    eval_poly_horner,
    gradient,
    hessian_rank_at,
    partial,
)
from .projgeom import DEFAULT_SCAN_CAP, PointSet, ProjPoint, canonicalize
from .scan import common_zeros, coords_table, eval_on_points


@dataclass
class NodalInstance:
    defining: List[HomoPoly]
    ambient_dim: int
    sing: PointSet
    node_flags: List[bool] = dc_field(default_factory=list)
    clean: bool = False
    isolated_warning: Optional[str] = None
    generators: Optional[dict] = None  # named building blocks, when generated

    @property
    def field(self) -> FieldSpec:
        return self.defining[0].field


def _rows_to_pointset(rows: np.ndarray, n: int, field: FieldSpec) -> PointSet:
    pts = tuple(canonicalize([int(v) for v in row], field) for row in rows)
    return PointSet(n, pts, field)


def singular_points(
    f: HomoPoly,
    scan_cap: int = DEFAULT_SCAN_CAP,
    threads: int = 1,
) -> PointSet:
    """All P in P^n(F_p) with f(P) = 0 and vanishing gradient, in scan order.

    Every hit is re-verified with an independent evaluation routine.
    """
    if f.is_zero() or f.degree < 2:
        raise ValueError("need a nonzero form of degree >= 2")
    if not f.field.is_prime_field:
        raise ValueError("scans require a prime field")
    p = f.field.p
    if f.degree % p == 0:
        raise CharDividesDegree(f"p={p} divides degree {f.degree}")
    n = f.nvars - 1
    pts = coords_table(n, p, scan_cap)
    rows = common_zeros([f] + gradient(f), pts, p, threads=threads)
    result = _rows_to_pointset(rows, n, f.field)
    grads = gradient(f)
    for pt in result:
        assert not eval_poly_horner(f, pt.coords), "scan soundness: f"
        for g in grads:
            assert not eval_poly_horner(g, pt.coords), "scan soundness: gradient"
    return result


def verify_nodal(inst: NodalInstance, isolation_factor: int = 5) -> NodalInstance:
    """Fill node_flags (full Hessian rank at each singular point) and clean.

    Isolation over F_p is heuristic: a positive-dimensional component shows
    up as a large scan count, flagged when |sing| exceeds
    isolation_factor * degree * n.
    """
    n = inst.ambient_dim
    degree = max(g.degree for g in inst.defining)
    flags: List[bool] = []
    for pt in inst.sing:
        if len(inst.defining) == 1:
            flags.append(hessian_rank_at(inst.defining[0], pt) == n)
        else:
            flags.append(_ci_node_check(inst.defining[0], inst.defining[1], pt))
    inst.node_flags = flags
    inst.clean = all(flags) if flags else True
    threshold = isolation_factor * degree * n
    if len(inst.sing) > threshold:
        inst.isolated_warning = (
            f"NotIsolated: {len(inst.sing)} singular points exceed the "
            f"isolation threshold {threshold}; likely a positive-dimensional locus"
        )
        inst.clean = False
    return inst


def _ci_node_check(F: HomoPoly, G: HomoPoly, pt: ProjPoint) -> bool:
    """Ordinary double point test for a codimension-2 complete intersection.

    At a Jacobian-rank-1 point, one combination of F, G has vanishing
    differential; its affine Hessian restricted to the tangent hyperplane of
    the transverse combination must have full rank n-1.
    """
    fld = F.field
    if fld.is_prime_field and fld.p == 2:
        raise CharTooSmall("Hessian test unreliable in characteristic 2")
    coords = pt.coords
    nv = F.nvars
    gF = [eval_poly(partial(F, v), coords) for v in range(nv)]
    gG = [eval_poly(partial(G, v), coords) for v in range(nv)]
    jac_rank = matrix_rank([gF, gG], fld)
    if jac_rank != 1:
        return False  # rank 0: worse than a node; rank 2: smooth point
    # combination with vanishing differential: alpha*gF + beta*gG = 0
    combo = nullspace([[a, b] for a, b in zip(gF, gG)], 2, fld)[0]
    alpha, beta = combo
    pivot = next(i for i, c in enumerate(coords) if c)
    Hf = _affine_hessian(F, coords, pivot)
    Hg = _affine_hessian(G, coords, pivot)
    n = nv - 1
    H = [[fld.add(fld.mul(alpha, Hf[i][j]), fld.mul(beta, Hg[i][j])) for j in range(n)] for i in range(n)]
    # transverse differential in the affine chart
    row = gF if any(gF) else gG
    affine_row = [row[j] for j in range(nv) if j != pivot]
    tangent = nullspace([affine_row], n, fld)
    # rank of H restricted to the tangent hyperplane
    restricted = [
        [_quad(H, u, v, fld) for v in tangent]
        for u in tangent
    ]
    return matrix_rank(restricted, fld) == n - 1


def _quad(H, u, v, fld):
    total = fld.zero
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if vj:
                total = fld.add(total, fld.mul(ui, fld.mul(H[i][j], vj)))
    return total


def _affine_hessian(f: HomoPoly, coords, pivot: int):
    from .poly import _dehomogenize, _dict_partial, _dict_eval  # module-internal reuse

    fld = f.field
    affine = _dehomogenize(f, pivot)
    acoords = coords[:pivot] + coords[pivot + 1:]
    n = f.nvars - 1
    firsts = [_dict_partial(affine, i, fld) for i in range(n)]
    return [
        [_dict_eval(_dict_partial(firsts[i], j, fld), acoords, fld) for j in range(n)]
        for i in range(n)
    ]


def ci_singular_points(
    F: HomoPoly,
    G: HomoPoly,
    scan_cap: int = DEFAULT_SCAN_CAP,
    threads: int = 1,
) -> PointSet:
    """Points with F = G = 0 where the 2 x (n+1) Jacobian has rank <= 1."""
    if F.field != G.field or F.nvars != G.nvars:
        raise ValueError("F and G must share field and variables")
    if not F.field.is_prime_field:
        raise ValueError("scans require a prime field")
    p = F.field.p
    n = F.nvars - 1
    pts = coords_table(n, p, scan_cap)
    pF = [partial(F, v) for v in range(n + 1)]
    pG = [partial(G, v) for v in range(n + 1)]

    def jacobian_rank_le_1(alive: np.ndarray) -> np.ndarray:
        valsF = [eval_on_points(g, alive, p) for g in pF]
        valsG = [eval_on_points(g, alive, p) for g in pG]
        ok = np.ones(alive.shape[0], dtype=bool)
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                minor = (valsF[i] * valsG[j] - valsF[j] * valsG[i]) % p
                ok &= minor == 0
        return ok

    rows = common_zeros([F, G], pts, p, threads=threads, extra_predicate=jacobian_rank_le_1)
    return _rows_to_pointset(rows, n, F.field)
