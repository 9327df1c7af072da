"""Seeded generators for three extremal non-factorial families, each returning
a fully verified NodalInstance.

"General" data are seed-derived but not left to luck: over a small prime
field a blind random draw almost never places every geometric intersection
point at an F_p-rational point, so each generator first picks rational
points on a seeded curve and then randomizes the remaining forms inside the
linear system of forms through those points.  Acceptance is always by scan
verification (node count formula + all-ODP), with bounded retry and a loud
DegenerateDraw carrying the per-seed observed counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import BadParams, DegenerateDraw
from .fields import FieldSpec
from .lincond import point_row
from .linalg import nullspace
from .poly import (
    HomoPoly,
    embed_poly,
    eval_poly,
    gradient,
    make_poly,
    monomial_basis,
    random_homo,
    zero_poly,
)
from .projgeom import (
    DEFAULT_SCAN_CAP,
    PointSet,
    ProjPoint,
    canonicalize,
    enumerate_projective,
)
from .rng import SplitMix64
from .sing_locus import (
    NodalInstance,
    ci_singular_points,
    singular_points,
    verify_nodal,
)


@dataclass(frozen=True)
class FamilySpec:
    family: str  # double_solid_eq15 | hypersurface_xgyf | ci_plane
    field: FieldSpec
    seed: int
    r: Optional[int] = None
    d: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    max_retries: int = 5

    def __post_init__(self):
        if self.family == "double_solid_eq15":
            if self.r is None or self.r < 2:
                raise BadParams("double_solid_eq15 needs r >= 2")
        elif self.family == "hypersurface_xgyf":
            if self.d is None or self.d < 3:
                raise BadParams("hypersurface_xgyf needs d >= 3")
        elif self.family == "ci_plane":
            if self.m is None or self.k is None or not self.m >= self.k >= 2:
                raise BadParams("ci_plane needs m >= k >= 2")
        else:
            raise BadParams(f"unknown family {self.family!r}")
        if not self.field.is_prime_field:
            raise BadParams("families are generated over prime fields")


# --- shared helpers ------------------------------------------------------


def _curve_smooth_points(f: HomoPoly, p: int) -> List[ProjPoint]:
    """Smooth F_p-points of a plane curve, in enumeration order."""
    grads = gradient(f)
    pts = []
    for q in enumerate_projective(f.nvars - 1, p):
        if eval_poly(f, q.coords):
            continue
        if all(not eval_poly(g, q.coords) for g in grads):
            continue  # singular point of the curve itself
        pts.append(q)
    return pts


def _line_points_on_curve(curve: HomoPoly, a: ProjPoint, b: ProjPoint, p: int) -> List[ProjPoint]:
    """All F_p-points of the line through a, b lying on the plane curve."""
    field = curve.field
    pts = []
    if not eval_poly(curve, b.coords):
        pts.append(b)
    for t in range(p):
        q = canonicalize(
            [field.add(x, field.mul(field.of_int(t), y)) for x, y in zip(a.coords, b.coords)],
            field,
        )
        if not eval_poly(curve, q.coords):
            pts.append(q)
    return pts


def _line_section_nodes(
    curve: HomoPoly,
    smooth_pts: List[ProjPoint],
    nlines: int,
    per_line: int,
    rng: SplitMix64,
    p: int,
    max_attempts: int = 500,
) -> Optional[List[ProjPoint]]:
    """Union of `nlines` disjoint complete line sections of the curve, each
    consisting of exactly `per_line` distinct smooth rational points.

    Choosing the points in complete collinear groups makes their divisor
    linearly equivalent to nlines * H on the curve, so a residual form of
    degree nlines through them exists that does not contain the curve; an
    arbitrary point sample of that size admits no such form once the curve
    has positive genus.
    """
    smooth_set = {q.coords for q in smooth_pts}
    chosen: List[List[ProjPoint]] = []
    used = set()
    for _ in range(max_attempts):
        if len(chosen) == nlines:
            break
        a, b = rng.sample(smooth_pts, 2)
        if a.coords == b.coords:
            continue
        section = _line_points_on_curve(curve, a, b, p)
        coords = {q.coords for q in section}
        if len(coords) != per_line or len(section) != per_line:
            continue  # tangency, extra rational points, or missing ones
        if not coords <= smooth_set:
            continue
        if coords & used:
            continue
        chosen.append(section)
        used |= coords
    if len(chosen) < nlines:
        return None
    return [pt for grp in chosen for pt in grp]


def _random_form_through(
    nvars: int,
    degree: int,
    points: Sequence[ProjPoint],
    field: FieldSpec,
    rng: SplitMix64,
) -> Optional[HomoPoly]:
    """Seeded random element of the linear system of degree-`degree` forms
    vanishing at the given points; None when the system is empty."""
    basis = monomial_basis(nvars, degree)
    rows = [point_row(q.coords, basis, field) for q in points]
    kernel = nullspace(rows, len(basis), field)
    if not kernel:
        return None
    coeffs = [field.zero] * len(basis)
    for vec in kernel:
        c = field.of_int(rng.below(field.p))
        for j, v in enumerate(vec):
            if v:
                coeffs[j] = field.add(coeffs[j], field.mul(c, v))
    if not any(coeffs):
        # last resort inside the draw: take the first kernel vector
        coeffs = kernel[0]
    return make_poly(nvars, degree, {m: c for m, c in zip(basis, coeffs) if c}, field)


def _mix_in(plane_form: HomoPoly, nvars: int, positions: Tuple[int, ...],
            mix_vars: Tuple[int, ...], field: FieldSpec, rng: SplitMix64) -> HomoPoly:
    """Lift a plane form to nvars variables and add x_i * (random form) for
    each mix variable; the restriction to the coordinate plane is unchanged."""
    lifted = embed_poly(plane_form, nvars, positions)
    deg = plane_form.degree
    if deg < 1:
        return lifted
    for v in mix_vars:
        rand = random_homo(nvars, deg - 1, field, rng.next_u64())
        mono = tuple(1 if j == v else 0 for j in range(nvars))
        xv = make_poly(nvars, 1, {mono: field.one}, field)
        lifted = lifted + xv * rand
    return lifted


def _verified(
    spec: FamilySpec,
    build,
    expected: int,
    scan_cap: int,
    threads: int,
) -> NodalInstance:
    """Retry loop: build(seed) -> NodalInstance candidate; accept iff the
    scan finds exactly `expected` singular points, all ODP."""
    observed = []
    for attempt in range(spec.max_retries):
        seed = (spec.seed + attempt) & (2**64 - 1)
        inst = build(seed, scan_cap, threads)
        if inst is None:
            observed.append(None)
            continue
        observed.append(len(inst.sing))
        if len(inst.sing) == expected and inst.clean:
            return inst
    raise DegenerateDraw(
        f"{spec.family}: expected {expected} nodes, observed {observed} "
        f"over seeds {spec.seed}..{spec.seed + spec.max_retries - 1}",
        observed_counts=observed,
    )


# --- Family 1: double solid branch surface g_r^2 = g_1 * g_{2r-1} ----------------


def gen_double_solid_nonfactorial(
    spec: FamilySpec,
    scan_cap: int = DEFAULT_SCAN_CAP,
    threads: int = 1,
) -> NodalInstance:
    """Degree-2r surface f = g_r^2 - g_1 * g_{2r-1} in P^3 with exactly
    (2r-1)r nodes, all at F_p-rational points of {g_1 = g_r = g_{2r-1} = 0}.

    g_1 is the coordinate plane x = 0; on that plane a seeded degree-r curve
    is drawn first, (2r-1)r of its rational points are chosen, and g_{2r-1}
    is a seeded form through exactly those points.
    """
    if spec.family != "double_solid_eq15":
        raise BadParams("wrong family")
    r = spec.r
    field = spec.field
    p = field.p
    if p <= 2 * r:
        raise BadParams(f"need p > 2r = {2 * r}")
    expected = (2 * r - 1) * r

    def build(seed, cap, thr):
        rng = SplitMix64(seed)
        # plane curve of degree r in the plane {x = 0}, coordinates (y, z, w)
        c_r = random_homo(3, r, field, rng.next_u64())
        if c_r.is_zero():
            return None
        rational = _curve_smooth_points(c_r, p)
        if len(rational) < expected:
            return None
        nodes = _line_section_nodes(c_r, rational, 2 * r - 1, r, rng, p)
        if nodes is None:
            return None
        c_2r1 = _random_form_through(3, 2 * r - 1, nodes, field, rng)
        if c_2r1 is None or c_2r1.is_zero():
            return None
        # lift to P^3 (positions 1,2,3 = y,z,w), mixing in x-multiples
        g_r = _mix_in(c_r, 4, (1, 2, 3), (0,), field, rng)
        g_2r1 = _mix_in(c_2r1, 4, (1, 2, 3), (0,), field, rng)
        g_1 = make_poly(4, 1, {(1, 0, 0, 0): field.one}, field)
        f = g_r * g_r - g_1 * g_2r1
        sing = singular_points(f, scan_cap=cap, threads=thr)
        inst = verify_nodal(NodalInstance([f], 3, sing))
        inst.generators = {"g_1": g_1, "g_r": g_r, "g_2r_minus_1": g_2r1}
        return inst

    return _verified(spec, build, expected, scan_cap, threads)


# --- Family 2: hypersurface x*g + y*f in P^4 -------------------------------


def gen_hypersurface_nonfactorial(
    spec: FamilySpec,
    scan_cap: int = DEFAULT_SCAN_CAP,
    threads: int = 1,
) -> NodalInstance:
    """Degree-d hypersurface V = x*g + y*f in P^4 with exactly (d-1)^2 nodes,
    all on the plane {x = y = 0} at rational points of {f = g = 0}."""
    if spec.family != "hypersurface_xgyf":
        raise BadParams("wrong family")
    d = spec.d
    field = spec.field
    p = field.p
    if p <= d:
        raise BadParams(f"need p > d = {d}")
    expected = (d - 1) ** 2

    def build(seed, cap, thr):
        rng = SplitMix64(seed)
        # plane {x = y = 0} has coordinates (z, w, t) = positions 2, 3, 4
        g_plane = random_homo(3, d - 1, field, rng.next_u64())
        if g_plane.is_zero():
            return None
        rational = _curve_smooth_points(g_plane, p)
        if len(rational) < expected:
            return None
        nodes = _line_section_nodes(g_plane, rational, d - 1, d - 1, rng, p)
        if nodes is None:
            return None
        f_plane = _random_form_through(3, d - 1, nodes, field, rng)
        if f_plane is None or f_plane.is_zero():
            return None
        g = _mix_in(g_plane, 5, (2, 3, 4), (0, 1), field, rng)
        f = _mix_in(f_plane, 5, (2, 3, 4), (0, 1), field, rng)
        x = make_poly(5, 1, {(1, 0, 0, 0, 0): field.one}, field)
        y = make_poly(5, 1, {(0, 1, 0, 0, 0): field.one}, field)
        V = x * g + y * f
        sing = singular_points(V, scan_cap=cap, threads=thr)
        inst = verify_nodal(NodalInstance([V], 4, sing))
        inst.generators = {"g": g, "f": f}
        return inst

    return _verified(spec, build, expected, scan_cap, threads)


# --- Family 3: complete intersection through a 2-plane in P^5 -----------------


def gen_ci_nonfactorial(
    spec: FamilySpec,
    scan_cap: int = DEFAULT_SCAN_CAP,
    threads: int = 1,
    check_smooth_generators: bool = False,
) -> NodalInstance:
    """Complete intersection F = x*A + y*B + z*C (degree m), G = x*D + y*E + z*H
    (degree k) in P^5, both containing the 2-plane {x = y = z = 0}, with
    exactly (m+k-2)^2 - (m-1)(k-1) nodes on that plane.

    On the plane the nodes are the rank-<=1 locus of [[A,B,C],[D,E,H]].  The
    generator builds that matrix Hilbert-Burch style: it picks the node
    points first, takes the space of degree-(m+k-2) forms through them (must
    be 3-dimensional, the generic Hilbert function for this count), and
    recovers the two rows as syzygies of those three forms in degrees k-1
    and m-1.  The maximal minors then cut out exactly the chosen points.
    """
    if spec.family != "ci_plane":
        raise BadParams("wrong family")
    m, k = spec.m, spec.k
    field = spec.field
    p = field.p
    s = m + k - 2
    expected = s**2 - (m - 1) * (k - 1)

    def _syzygies(gens, t):
        """Kernel of (s1,s2,s3) -> sum s_i * gens_i with deg s_i = t."""
        basis_t = monomial_basis(3, t)
        target = monomial_basis(3, s + t)
        idx = {mo: i for i, mo in enumerate(target)}
        mat = [[field.zero] * (3 * len(basis_t)) for _ in target]
        for gi, g in enumerate(gens):
            for bj, mo in enumerate(basis_t):
                col = gi * len(basis_t) + bj
                for gm, gc in g.terms.items():
                    row = idx[tuple(a + b for a, b in zip(gm, mo))]
                    mat[row][col] = field.add(mat[row][col], gc)
        return nullspace(mat, 3 * len(basis_t), field), basis_t

    def _random_syzygy_row(kernel, basis_t, deg, rng):
        coeffs = [field.zero] * (3 * len(basis_t))
        for vec in kernel:
            c = field.of_int(rng.below(p))
            for j, v in enumerate(vec):
                if v:
                    coeffs[j] = field.add(coeffs[j], field.mul(c, v))
        nt = len(basis_t)
        return [
            make_poly(3, deg, {mo: c for mo, c in zip(basis_t, coeffs[i * nt:(i + 1) * nt]) if c}, field)
            for i in range(3)
        ]

    def _plane_degeneracy_count(row1, row2):
        count = 0
        for q in enumerate_projective(2, p):
            a_, b_, c_ = (eval_poly(g, q.coords) for g in row1)
            d_, e_, h_ = (eval_poly(g, q.coords) for g in row2)
            if (
                field.sub(field.mul(a_, e_), field.mul(b_, d_)) == field.zero
                and field.sub(field.mul(a_, h_), field.mul(c_, d_)) == field.zero
                and field.sub(field.mul(b_, h_), field.mul(c_, e_)) == field.zero
            ):
                count += 1
        return count

    def build(seed, cap, thr):
        rng = SplitMix64(seed)
        all_pts = list(enumerate_projective(2, p))
        if len(all_pts) < expected:
            return None
        nodes = rng.sample(all_pts, expected)
        basis_s = monomial_basis(3, s)
        rows = [point_row(q.coords, basis_s, field) for q in nodes]
        gen_vecs = nullspace(rows, len(basis_s), field)
        if len(gen_vecs) != 3:
            return None  # non-generic Hilbert function for this (m, k)
        gens = [
            make_poly(3, s, {mo: c for mo, c in zip(basis_s, v) if c}, field)
            for v in gen_vecs
        ]
        ker2, basis2 = _syzygies(gens, k - 1)
        ker1, basis1 = _syzygies(gens, m - 1)
        if not ker1 or not ker2:
            return None
        row2 = _random_syzygy_row(ker2, basis2, k - 1, rng)  # (D, E, H)
        row1 = _random_syzygy_row(ker1, basis1, m - 1, rng)  # (A, B, C)
        if any(g.is_zero() for g in row1 + row2):
            return None
        if _plane_degeneracy_count(row1, row2) != expected:
            return None
        a_plane, b_plane, c_plane = row1
        d_plane, e_plane, h_plane = row2
        # lift restrictions to P^5 (plane coords w, t, v = positions 3, 4, 5)
        pos = (3, 4, 5)
        mix = (0, 1, 2)
        A = _mix_in(a_plane, 6, pos, mix, field, rng)
        B = _mix_in(b_plane, 6, pos, mix, field, rng)
        C = _mix_in(c_plane, 6, pos, mix, field, rng)
        D = _mix_in(d_plane, 6, pos, mix, field, rng)
        E = _mix_in(e_plane, 6, pos, mix, field, rng)
        H = _mix_in(h_plane, 6, pos, mix, field, rng)
        def coord(i):
            return make_poly(6, 1, {tuple(1 if j == i else 0 for j in range(6)): field.one}, field)
        x, y, z = coord(0), coord(1), coord(2)
        F = x * A + y * B + z * C
        G = x * D + y * E + z * H
        sing = ci_singular_points(F, G, scan_cap=cap, threads=thr)
        inst = verify_nodal(NodalInstance([F, G], 5, sing))
        if check_smooth_generators:
            for poly in (F, G):
                if len(singular_points(poly, scan_cap=cap, threads=thr)):
                    return None
        inst.generators = {"F": F, "G": G}
        return inst

    return _verified(spec, build, expected, scan_cap, threads)


def generate(spec: FamilySpec, scan_cap: int = DEFAULT_SCAN_CAP, threads: int = 1) -> NodalInstance:
    if spec.family == "double_solid_eq15":
        return gen_double_solid_nonfactorial(spec, scan_cap, threads)
    if spec.family == "hypersurface_xgyf":
        return gen_hypersurface_nonfactorial(spec, scan_cap, threads)
    return gen_ci_nonfactorial(spec, scan_cap, threads)
