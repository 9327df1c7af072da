"""Pure-arithmetic hypothesis engines: the three bullets of the main
independence criterion, the 3r-4 propositions, the application theorems for
double solids / hypersurfaces / complete intersections, and the classifier
that combines the defect computation with the structural equation detector
f = g_r^2 - g_1 * g_{2r-1}.

Everything here is exact integer/rational arithmetic; no floats anywhere.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import ceil, floor
from typing import Dict, List, Optional, Tuple

from .errors import BadParams
from .fields import FieldSpec
from .lincond import defect
from .poly import (
    HomoPoly,
    divide_by_linear,
    embed_poly,
    eval_poly,
    make_poly,
    parse_poly,
    poly_sqrt,
    restrict_to_plane,
)
from .projgeom import PointSet, ProjPoint, enumerate_projective, span_dim
from .sing_locus import NodalInstance, singular_points, verify_nodal


@dataclass
class CriterionVerdict:
    criterion_id: str
    applies: bool
    instantiated_inequalities: List[Tuple[str, bool]]
    certified_degree: Optional[int]
    parameters: Dict[str, object]

    def to_json(self) -> str:
        params = {
            k: (f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v)
            for k, v in self.parameters.items()
        }
        return json.dumps(
            {
                "criterion_id": self.criterion_id,
                "applies": self.applies,
                "instantiated_inequalities": [
                    {"text": t, "holds": h} for t, h in self.instantiated_inequalities
                ],
                "certified_degree": self.certified_degree,
                "parameters": params,
            },
            indent=2,
        )


def _verdict(cid, applies, ineqs, degree, params) -> CriterionVerdict:
    assert not applies or all(h for _, h in ineqs)
    return CriterionVerdict(cid, applies, ineqs, degree if applies else None, params)


# --- main criterion (three bullets) --------------------------------------------


def _mu_candidates(n: int, lam: int, size: int, xi: int) -> List[Fraction]:
    """Rationals with denominator dividing 60 over [1/60, lam+3], plus the
    exact boundary candidates xi/3, (xi+3)/3, xi/n, (xi+1)/n, size/lam."""
    top = 60 * (lam + 3)
    cands = [Fraction(t, 60) for t in range(1, top + 1)]
    extra = [
        Fraction(xi, 3),
        Fraction(xi + 3, 3),
        Fraction(xi, n) if n else None,
        Fraction(xi + 1, n) if n else None,
        Fraction(size, lam) if lam else None,
    ]
    seen = set(cands)
    for mu in extra:
        if mu is not None and 0 < mu <= lam + 3 and mu not in seen:
            cands.append(mu)
            seen.add(mu)
    return cands


def theorem_main_certify(n: int, lam: int, size: int, xi: int) -> CriterionVerdict:
    """First of the three bullet conditions that certifies independence of
    size points at degree xi under the lambda-incidence hypothesis."""
    if n < 2 or lam < 2 or size < 0 or xi < 0:
        raise BadParams("need n >= 2, lambda >= 2, size >= 0, xi >= 0")
    params: Dict[str, object] = {"n": n, "lambda": lam, "size": size, "xi": xi}

    # bullet 1: xi = floor(3*lambda/2 - 3) and |Sigma| < lambda*ceil(lambda/2)
    b1_xi = floor(Fraction(3 * lam, 2) - 3)
    b1_cap = lam * ceil(Fraction(lam, 2))
    ineqs1 = [
        (f"xi = floor(3*lambda/2 - 3) = {b1_xi}", xi == b1_xi),
        (f"|Sigma| = {size} < lambda*ceil(lambda/2) = {b1_cap}", size < b1_cap),
    ]
    if xi == b1_xi and size < b1_cap:
        return _verdict("main_bullet1", True, ineqs1, xi, params)

    # bullet 2: xi = floor(3*mu - 3), |Sigma| <= lambda*mu,
    #           floor(3*mu) - mu - 2 >= lambda >= mu
    for mu in _mu_candidates(n, lam, size, xi):
        if not (floor(3 * mu) - mu - 2 >= lam >= mu):
            continue
        if xi != floor(3 * mu - 3) or size > lam * mu:
            continue
        params["mu"] = mu
        ineqs2 = [
            (f"xi = floor(3*mu - 3) = {floor(3 * mu - 3)} with mu = {mu}", True),
            (f"|Sigma| = {size} <= lambda*mu = {lam * mu}", True),
            (f"floor(3*mu) - mu - 2 = {floor(3 * mu) - mu - 2} >= lambda = {lam} >= mu = {mu}", True),
        ]
        return _verdict("main_bullet2", True, ineqs2, xi, params)

    # bullet 3: xi = floor(n*mu), |Sigma| <= lambda*mu, (n-1)*mu >= lambda
    for mu in _mu_candidates(n, lam, size, xi):
        if (n - 1) * mu < lam:
            continue
        if xi != floor(n * mu) or size > lam * mu:
            continue
        params["mu"] = mu
        ineqs3 = [
            (f"xi = floor(n*mu) = {floor(n * mu)} with mu = {mu}", True),
            (f"|Sigma| = {size} <= lambda*mu = {lam * mu}", True),
            (f"(n-1)*mu = {(n - 1) * mu} >= lambda = {lam}", True),
        ]
        return _verdict("main_bullet3", True, ineqs3, xi, params)

    return _verdict("main_bullet1", False, ineqs1, None, params)


# --- the 3r-4 propositions -----------------------------------------------------


def prop_3r4_certify(r: int, eps: int, size: int) -> CriterionVerdict:
    """Independence at degree 3r-4-eps when |Sigma| < (2r-1)(r-eps),
    assuming the (2r-1)-incidence hypothesis.  The verdict is conditional on
    that hypothesis; callers with an IncidenceCertificate can discharge it."""
    if r < 2 or eps < 0:
        raise BadParams("need r >= 2, eps >= 0")
    cap = (2 * r - 1) * (r - eps)
    ok = size < cap
    ineqs = [
        (f"|Sigma| = {size} < (2r-1)(r-eps) = {cap}", ok),
        ("hypothesis: at most (2r-1)k points on any degree-k curve (conditional)", True),
    ]
    return _verdict(
        "prop_3r4", ok, ineqs, 3 * r - 4 - eps, {"r": r, "eps": eps, "size": size}
    )


# --- application theorems ------------------------------------------------------


def app_double_solid(r: int, nsing: int) -> CriterionVerdict:
    if r < 2:
        raise BadParams("need r >= 2")
    cap = (2 * r - 1) * r
    ok = nsing < cap
    ineqs = [(f"|Sigma| = {nsing} < (2r-1)r = {cap}", ok)]
    return _verdict("thm_double_solid", ok, ineqs, 3 * r - 4, {"r": r, "nsing": nsing})


def app_hypersurface(d: int, nsing: int) -> CriterionVerdict:
    if d < 3:
        raise BadParams("need d >= 3")
    cap = Fraction(2 * (d - 1) ** 2, 3)
    ok = nsing <= cap
    ineqs = [(f"|Sigma| = {nsing} <= 2(d-1)^2/3 = {cap}", ok)]
    return _verdict("thm_hypersurface", ok, ineqs, 2 * d - 5, {"d": d, "nsing": nsing})


def app_ci1(m: int, k: int, nsing: int) -> CriterionVerdict:
    if not m >= k >= 1:
        raise BadParams("need m >= k >= 1")
    cap = Fraction((m + k - 2) * (2 * m + k - 6), 5)
    side = m >= 7
    ok = nsing <= cap and side
    ineqs = [
        (f"|Sigma| = {nsing} <= (m+k-2)(2m+k-6)/5 = {cap}", nsing <= cap),
        (f"m = {m} >= 7", side),
    ]
    return _verdict("thm_ci1", ok, ineqs, 2 * m + k - 6, {"m": m, "k": k, "nsing": nsing})


def app_ci2(m: int, k: int, nsing: int) -> CriterionVerdict:
    if not m >= k >= 1:
        raise BadParams("need m >= k >= 1")
    cap = Fraction((2 * m + k - 3) * (m + k - 2), 3)
    side = m >= k + 6
    ok = nsing <= cap and side
    ineqs = [
        (f"|Sigma| = {nsing} <= (2m+k-3)(m+k-2)/3 = {cap}", nsing <= cap),
        (f"m = {m} >= k+6 = {k + 6}", side),
    ]
    return _verdict("thm_ci2", ok, ineqs, 2 * m + k - 6, {"m": m, "k": k, "nsing": nsing})


def app_double_hypersurface(d: int, r: int, nsing: int) -> CriterionVerdict:
    if d < 2 or 2 * r < d:
        raise BadParams("need d >= 2 and 2r >= d")
    cap = Fraction((2 * r + d - 2) * r, 2)
    side = r >= d + 7
    ok = nsing <= cap and side
    ineqs = [
        (f"|Sigma| = {nsing} <= (2r+d-2)r/2 = {cap}", nsing <= cap),
        (f"r = {r} >= d+7 = {d + 7}", side),
    ]
    return _verdict(
        "thm_double_hypersurface", ok, ineqs, 3 * r + d - 5, {"d": d, "r": r, "nsing": nsing}
    )


# --- structural detector -------------------------------------------------------


@dataclass
class StructureWitness:
    ell: HomoPoly      # the plane g_1
    g_r: HomoPoly
    g_2r1: HomoPoly

    def verify(self, f: HomoPoly) -> bool:
        diff = self.g_r * self.g_r - self.ell * self.g_2r1 - f
        return diff.is_zero()


def _candidate_planes(
    f: HomoPoly, sing: PointSet, exhaustive_cap: int = 31
) -> List[HomoPoly]:
    """Planes through node triples carrying more than 2r nodes; for small
    fields fall back to every plane of P^3(F_p)."""
    from .lincond import point_row
    from .linalg import nullspace
    from .poly import monomial_basis

    field = f.field
    r2 = f.degree  # 2r
    basis1 = monomial_basis(4, 1)
    planes: Dict[Tuple, HomoPoly] = {}

    def add_plane(coeffs):
        form = make_poly(4, 1, {m: c for m, c in zip(basis1, coeffs) if c}, field)
        key = tuple(sorted(form.terms.items()))
        if key not in planes:
            count = sum(1 for pt in sing if not eval_poly(form, pt.coords))
            if count > r2:
                planes[key] = form

    pts = sing.points
    for triple in itertools.combinations(pts, 3):
        rows = [list(p.coords) for p in triple]
        sols = nullspace(rows, 4, field)
        if len(sols) == 1:
            add_plane(sols[0])
    if not planes and field.is_prime_field and field.p <= exhaustive_cap:
        for q in enumerate_projective(3, field.p):
            form = make_poly(
                4, 1, {m: c for m, c in zip(basis1, q.coords) if c}, field
            )
            count = sum(1 for pt in sing if not eval_poly(form, pt.coords))
            if count > r2:
                key = tuple(sorted(form.terms.items()))
                planes.setdefault(key, form)
    return list(planes.values())


def detect_nodal_surface_form(
    f: HomoPoly,
    sing: PointSet,
    extra_planes: Tuple[HomoPoly, ...] = (),
) -> Optional[StructureWitness]:
    """Search for a plane ell with f = G_r^2 - ell * G_{2r-1}.

    On each candidate plane: restrict f, take an exact polynomial square
    root, lift the root back to P^3 on the complementary variables, and
    divide the residual by ell.  Absence of a witness proves nothing.
    """
    if f.degree % 2:
        raise BadParams("degree must be even")
    r = f.degree // 2
    field = f.field
    for ell in list(_candidate_planes(f, sing)) + list(extra_planes):
        chart = next(
            i for i in range(4) if ell.coeff(tuple(1 if j == i else 0 for j in range(4)))
        )
        restricted = restrict_to_plane(f, ell, chart)
        root = poly_sqrt(restricted)
        if root is None:
            continue
        positions = tuple(j for j in range(4) if j != chart)
        G_r = embed_poly(root, 4, positions)
        h = f - G_r * G_r  # equals -ell * G_{2r-1} if the structure holds
        if h.is_zero():
            continue
        quotient = divide_by_linear(h, ell)
        if quotient is None:
            continue
        g_2r1 = quotient.scale(field.neg(field.one))
        witness = StructureWitness(ell, G_r, g_2r1)
        if witness.verify(f):
            return witness
    return None


# --- the classifier --------------------------------------------------------


@dataclass
class HongParkVerdict:
    status: str  # factorial | nonfactorial_structured | nonfactorial_unstructured | out_of_range | unknown
    r: int
    nsing: int
    defect: Optional[int]
    witness: Optional[StructureWitness]
    note: str = ""

    def to_json(self) -> str:
        wit = None
        if self.witness is not None:
            wit = {
                "ell": self.witness.ell.to_text(),
                "g_r": self.witness.g_r.to_text(),
                "g_2r_minus_1": self.witness.g_2r1.to_text(),
            }
        return json.dumps(
            {
                "status": self.status,
                "r": self.r,
                "nsing": self.nsing,
                "defect": self.defect,
                "witness": wit,
                "note": self.note,
            },
            indent=2,
        )


def hong_park_classify(
    f: HomoPoly,
    r: int,
    scan_cap: int = 10**8,
    threads: int = 1,
) -> HongParkVerdict:
    """Classify a nodal surface of degree 2r in P^3: defect 0 at 3r-4 means
    factorial (mod-p evidence); positive defect triggers the structural
    detector for the equation g_r^2 = g_1 * g_{2r-1}."""
    if f.degree != 2 * r:
        raise BadParams(f"degree {f.degree} != 2r = {2 * r}")
    sing = singular_points(f, scan_cap=scan_cap, threads=threads)
    inst = verify_nodal(NodalInstance([f], 3, sing))
    cap = (2 * r - 1) * r + 1
    if len(sing) > cap:
        return HongParkVerdict(
            "out_of_range", r, len(sing), None, None,
            note=f"|Sing| = {len(sing)} > (2r-1)r+1 = {cap}",
        )
    if not sing.points:
        return HongParkVerdict("factorial", r, 0, 0, None, note="smooth (mod-p evidence)")
    rep = defect(sing, 3 * r - 4)
    if rep.defect == 0:
        return HongParkVerdict(
            "factorial", r, len(sing), 0, None, note="defect 0 (mod-p evidence)"
        )
    witness = detect_nodal_surface_form(f, sing)
    if witness is not None:
        return HongParkVerdict(
            "nonfactorial_structured", r, len(sing), rep.defect, witness,
            note="defect >= 1 with structural witness (mod-p evidence)",
        )
    return HongParkVerdict(
        "nonfactorial_unstructured", r, len(sing), rep.defect, None,
        note=(
            "defect >= 1 but no witness found among candidate planes; "
            "either a detector miss or a mod-p artifact (mod-p evidence)"
        ),
    )
