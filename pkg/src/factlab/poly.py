"""Dense homogeneous multivariate polynomials over exact fields.

Monomials are exponent tuples; a HomoPoly stores a dict from monomial to
nonzero coefficient together with an explicit degree so the zero polynomial
keeps its degree.  The canonical term order everywhere is graded lex with
earlier variables larger (for a fixed degree this is plain descending
tuple order).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    BadChart,
    CharTooSmall,
    CharTwo,
    FieldMismatch,
    NotHomogeneous,
    NotSingular,
    OddDegree,
    PolySyntaxError,
    UnknownVariable,
)
from .fields import FieldSpec, Scalar
from .rng import SplitMix64

Monomial = Tuple[int, ...]

DEFAULT_VAR_NAMES = {
    2: ("x", "y"),
    3: ("x", "y", "z"),
    4: ("x", "y", "z", "w"),
    5: ("x", "y", "z", "t", "u"),
    6: ("x", "y", "z", "w", "t", "v"),
}


def var_names(nvars: int) -> Tuple[str, ...]:
    try:
        return DEFAULT_VAR_NAMES[nvars]
    except KeyError:
        return tuple(f"x{i}" for i in range(nvars))


@dataclass(frozen=True)
class HomoPoly:
    nvars: int
    degree: int
    terms: Dict[Monomial, Scalar]
    field: FieldSpec

    def __post_init__(self):
        for m, c in self.terms.items():
            if len(m) != self.nvars:
                raise ValueError(f"monomial {m} has wrong arity")
            if sum(m) != self.degree:
                raise NotHomogeneous(f"monomial {m} has degree {sum(m)} != {self.degree}")
            if not c:
                raise ValueError("zero coefficient stored")

    # --- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def leading_monomial(self) -> Monomial:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms)

    def coeff(self, m: Monomial) -> Scalar:
        return self.terms.get(m, self.field.zero)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomoPoly)
            and self.nvars == other.nvars
            and self.degree == other.degree
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.degree, self.field, frozenset(self.terms.items())))

    # --- ring operations ----------------------------------------------------

    def _check(self, other: "HomoPoly"):
        if self.field != other.field:
            raise FieldMismatch("mixed fields")
        if self.nvars != other.nvars:
            raise ValueError("mixed variable counts")

    def __add__(self, other: "HomoPoly") -> "HomoPoly":
        self._check(other)
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise NotHomogeneous("adding different degrees")
        deg = other.degree if self.is_zero() else self.degree
        return make_poly(self.nvars, deg, _add_dicts(self.terms, other.terms, self.field), self.field)

    def __sub__(self, other: "HomoPoly") -> "HomoPoly":
        return self + other.scale(self.field.neg(self.field.one))

    def __mul__(self, other: "HomoPoly") -> "HomoPoly":
        self._check(other)
        terms = _mul_dicts(self.terms, other.terms, self.field)
        return make_poly(self.nvars, self.degree + other.degree, terms, self.field)

    def scale(self, c: Scalar) -> "HomoPoly":
        f = self.field
        terms = {m: f.mul(c, v) for m, v in self.terms.items() if f.mul(c, v)}
        return make_poly(self.nvars, self.degree, terms, f)

    # --- text -----------------------------------------------------------

    def to_text(self, names: Optional[Sequence[str]] = None) -> str:
        if self.is_zero():
            return "0"
        names = names or var_names(self.nvars)
        parts: List[str] = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = []
            for v, e in enumerate(m):
                if e == 1:
                    factors.append(names[v])
                elif e > 1:
                    factors.append(f"{names[v]}^{e}")
            body = "*".join(factors)
            if isinstance(c, Fraction) and c < 0:
                sign, mag = "-", -c
            else:
                sign, mag = "+", c
            if not body:
                parts.append((sign, str(mag)))
            elif mag == 1:
                parts.append((sign, body))
            else:
                parts.append((sign, f"{mag}*{body}"))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_text()


def make_poly(nvars: int, degree: int, terms: Dict[Monomial, Scalar], field: FieldSpec) -> HomoPoly:
    return HomoPoly(nvars, degree, {m: c for m, c in terms.items() if c}, field)


def zero_poly(nvars: int, degree: int, field: FieldSpec) -> HomoPoly:
    return HomoPoly(nvars, degree, {}, field)


def _add_dicts(a, b, f: FieldSpec):
    out = dict(a)
    for m, c in b.items():
        s = f.add(out.get(m, f.zero), c)
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _mul_dicts(a, b, f: FieldSpec):
    out: Dict[Monomial, Scalar] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            s = f.add(out.get(m, f.zero), f.mul(ca, cb))
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


# --- parsing ------------------------------------------------------------

_TOKEN_COEFF = re.compile(r"^[+-]?\d+(/\d+)?$")
_TOKEN_VAR = re.compile(r"^([A-Za-z]\w*)(\^(\d+))?$")


def parse_poly(
    text: str,
    nvars: int,
    field: FieldSpec,
    names: Optional[Sequence[str]] = None,
) -> HomoPoly:
    """Parse the bit-exact grammar: term (('+'|'-') term)*.

    term ::= [coeff '*'] var ('^' exp)? ('*' var ('^' exp)?)* ; a bare
    coefficient is accepted as a degree-0 term.
    """
    names = list(names or var_names(nvars))
    index = {n: i for i, n in enumerate(names)}
    stripped = text.replace(" ", "").replace("\t", "")
    if not stripped:
        raise PolySyntaxError("empty polynomial text")

    # split on +/- at top level (no parentheses in the grammar)
    pieces: List[Tuple[int, str]] = []
    sign, cur = 1, ""
    for ch in stripped:
        if ch in "+-" and cur:
            pieces.append((sign, cur))
            sign, cur = (1 if ch == "+" else -1), ""
        elif ch in "+-" and not cur:
            sign *= 1 if ch == "+" else -1
        else:
            cur += ch
    if not cur:
        raise PolySyntaxError(f"dangling sign in {text!r}")
    pieces.append((sign, cur))

    degree: Optional[int] = None
    terms: Dict[Monomial, Scalar] = {}
    for sgn, piece in pieces:
        coeff = field.one
        expo = [0] * nvars
        for factor in piece.split("*"):
            if not factor:
                raise PolySyntaxError(f"empty factor in term {piece!r}")
            if _TOKEN_COEFF.match(factor):
                coeff = field.mul(coeff, field.parse_scalar(factor))
                continue
            m = _TOKEN_VAR.match(factor)
            if not m:
                raise PolySyntaxError(f"bad factor {factor!r}")
            name, _, exp = m.groups()
            if name not in index:
                raise UnknownVariable(f"variable {name!r} not among {names}")
            expo[index[name]] += int(exp) if exp else 1
        if sgn < 0:
            coeff = field.neg(coeff)
        d = sum(expo)
        if degree is None:
            degree = d
        elif degree != d:
            raise NotHomogeneous(f"term degrees {degree} and {d} in {text!r}")
        key = tuple(expo)
        s = field.add(terms.get(key, field.zero), coeff)
        if s:
            terms[key] = s
        else:
            terms.pop(key, None)
    return HomoPoly(nvars, degree, terms, field)


# --- monomial bases --------------------------------------------------------


def monomial_basis(nvars: int, degree: int) -> List[Monomial]:
    """All monomials of the given total degree, descending graded-lex."""
    if nvars < 1 or degree < 0:
        raise ValueError("nvars >= 1 and degree >= 0 required")
    out: List[Monomial] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


# --- evaluation and calculus -------------------------------------------


def eval_poly(f: HomoPoly, coords: Sequence[Scalar]) -> Scalar:
    if len(coords) != f.nvars:
        raise FieldMismatch(f"expected {f.nvars} coordinates, got {len(coords)}")
    fld = f.field
    total = fld.zero
    for m, c in f.terms.items():
        v = c
        for x, e in zip(coords, m):
            if e:
                v = fld.mul(v, fld.power(x, e))
        total = fld.add(total, v)
    return total


def eval_poly_horner(f: HomoPoly, coords: Sequence[Scalar]) -> Scalar:
    """Independent evaluation path (recursive Horner by first variable).

    Used as a double-check against eval_poly in scan verification.
    """
    fld = f.field
    return _horner(dict(f.terms), list(coords), 0, f.nvars, fld)


def _horner(terms, coords, var, nvars, fld):
    if not terms:
        return fld.zero
    if var == nvars:
        acc = fld.zero
        for c in terms.values():
            acc = fld.add(acc, c)
        return acc
    by_exp: Dict[int, dict] = {}
    for m, c in terms.items():
        by_exp.setdefault(m[var], {})[m] = c
    acc = fld.zero
    for e in sorted(by_exp, reverse=True):
        inner = _horner(by_exp[e], coords, var + 1, nvars, fld)
        acc = fld.add(acc, fld.mul(inner, fld.power(coords[var], e)))
    return acc


def partial(f: HomoPoly, var: int) -> HomoPoly:
    fld = f.field
    terms: Dict[Monomial, Scalar] = {}
    for m, c in f.terms.items():
        e = m[var]
        if e == 0:
            continue
        nc = fld.mul(c, fld.of_int(e))
        if not nc:
            continue
        nm = m[:var] + (e - 1,) + m[var + 1:]
        terms[nm] = fld.add(terms.get(nm, fld.zero), nc)
    return make_poly(f.nvars, max(f.degree - 1, 0), terms, fld)


def gradient(f: HomoPoly) -> List[HomoPoly]:
    if f.degree < 1:
        raise ValueError("gradient needs degree >= 1")
    return [partial(f, v) for v in range(f.nvars)]


def _dehomogenize(f: HomoPoly, pivot: int) -> Dict[Monomial, Scalar]:
    """Set the pivot variable to 1; returns an inhomogeneous term dict over
    the remaining nvars-1 variables (pivot slot removed)."""
    fld = f.field
    out: Dict[Monomial, Scalar] = {}
    for m, c in f.terms.items():
        key = m[:pivot] + m[pivot + 1:]
        out[key] = fld.add(out.get(key, fld.zero), c)
    return {m: c for m, c in out.items() if c}


def _dict_partial(terms: Dict[Monomial, Scalar], var: int, fld: FieldSpec):
    out: Dict[Monomial, Scalar] = {}
    for m, c in terms.items():
        e = m[var]
        if not e:
            continue
        nc = fld.mul(c, fld.of_int(e))
        if not nc:
            continue
        nm = m[:var] + (e - 1,) + m[var + 1:]
        out[nm] = fld.add(out.get(nm, fld.zero), nc)
    return out


def _dict_eval(terms: Dict[Monomial, Scalar], coords, fld: FieldSpec):
    total = fld.zero
    for m, c in terms.items():
        v = c
        for x, e in zip(coords, m):
            if e:
                v = fld.mul(v, fld.power(x, e))
        total = fld.add(total, v)
    return total


def hessian_rank_at(f: HomoPoly, point) -> int:
    """Rank of the affine Hessian at a singular point (chart: pivot coord = 1).

    point is a ProjPoint (anything with .coords).  Raises NotSingular when the
    gradient does not vanish there, CharTooSmall in characteristic 2.
    """
    from .linalg import rank as matrix_rank  # local import; no cycle at module level

    fld = f.field
    if fld.is_prime_field and fld.p == 2:
        raise CharTooSmall("Hessian rank test unreliable in characteristic 2")
    coords = tuple(point.coords)
    for g in gradient(f):
        if eval_poly(g, coords):
            raise NotSingular(f"gradient nonzero at {coords}")
    pivot = next(i for i, c in enumerate(coords) if c)
    affine = _dehomogenize(f, pivot)
    acoords = coords[:pivot] + coords[pivot + 1:]
    n = f.nvars - 1
    firsts = [_dict_partial(affine, i, fld) for i in range(n)]
    H = [
        [_dict_eval(_dict_partial(firsts[i], j, fld), acoords, fld) for j in range(n)]
        for i in range(n)
    ]
    return matrix_rank(H, fld)


# --- restriction, division, roots ----------------------------------------


def restrict_to_plane(f: HomoPoly, ell: HomoPoly, chart: int) -> HomoPoly:
    """Eliminate the chart variable via ell = 0; result lives in nvars-1 vars."""
    if ell.degree != 1:
        raise ValueError("ell must be linear")
    fld = f.field
    unit = tuple(1 if i == chart else 0 for i in range(f.nvars))
    c = ell.coeff(unit)
    if not c:
        raise BadChart(f"zero coefficient at chart variable {chart}")
    inv_neg = fld.neg(fld.inv(c))
    # linear substitute L in the reduced variables: x_chart -> L
    L: Dict[Monomial, Scalar] = {}
    for m, cc in ell.terms.items():
        if m == unit:
            continue
        j = next(i for i, e in enumerate(m) if e)
        rj = j if j < chart else j - 1
        key = tuple(1 if i == rj else 0 for i in range(f.nvars - 1))
        L[key] = fld.mul(cc, inv_neg)
    out: Dict[Monomial, Scalar] = {}
    pow_cache: Dict[int, Dict[Monomial, Scalar]] = {0: {(0,) * (f.nvars - 1): fld.one}}
    for m, cc in f.terms.items():
        e = m[chart]
        if e not in pow_cache:
            k = max(pow_cache)
            while k < e:
                pow_cache[k + 1] = _mul_dicts(pow_cache[k], L, fld)
                k += 1
        rest = m[:chart] + m[chart + 1:]
        for lm, lc in pow_cache[e].items():
            key = tuple(a + b for a, b in zip(rest, lm))
            s = fld.add(out.get(key, fld.zero), fld.mul(cc, lc))
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return make_poly(f.nvars - 1, f.degree, out, fld)


def divide_by_linear(f: HomoPoly, ell: HomoPoly) -> Optional[HomoPoly]:
    """Exact quotient f / ell, or None when ell does not divide f."""
    if ell.degree != 1 or ell.is_zero():
        raise ValueError("ell must be a nonzero linear form")
    fld = f.field
    if f.is_zero():
        return zero_poly(f.nvars, max(f.degree - 1, 0), fld)
    pivot = next(i for i, e in enumerate(ell.leading_monomial()) if e)
    unit = tuple(1 if i == pivot else 0 for i in range(f.nvars))
    c = ell.coeff(unit)
    cinv = fld.inv(c)
    # univariate synthetic division in the pivot variable
    h = dict(f.terms)
    q: Dict[Monomial, Scalar] = {}
    while h:
        # leading term w.r.t. pivot-first lex
        lead = max(h, key=lambda m: (m[pivot], m))
        if lead[pivot] == 0:
            return None
        qm = lead[:pivot] + (lead[pivot] - 1,) + lead[pivot + 1:]
        qc = fld.mul(h[lead], cinv)
        q[qm] = fld.add(q.get(qm, fld.zero), qc)
        for em, ec in ell.terms.items():
            m = tuple(a + b for a, b in zip(qm, em))
            s = fld.sub(h.get(m, fld.zero), fld.mul(qc, ec))
            if s:
                h[m] = s
            else:
                h.pop(m, None)
    return make_poly(f.nvars, f.degree - 1, q, fld)


def poly_sqrt(f: HomoPoly):
    """Exact square root g with g*g == f, or None.

    Deterministic coefficient matching from the graded-lex leading term; the
    root's leading coefficient is the principal scalar square root.
    """
    fld = f.field
    if f.degree % 2:
        raise OddDegree(f"degree {f.degree} is odd")
    if fld.is_prime_field and fld.p == 2:
        raise CharTwo("no square roots in characteristic 2")
    if f.is_zero():
        return zero_poly(f.nvars, f.degree // 2, fld)
    lead_f = f.leading_monomial()
    if any(e % 2 for e in lead_f):
        return None
    lead_g = tuple(e // 2 for e in lead_f)
    c_lead = fld.sqrt(f.terms[lead_f])
    if c_lead is None:
        return None
    half = f.degree // 2
    g: Dict[Monomial, Scalar] = {lead_g: c_lead}
    two_lead_inv = fld.inv(fld.mul(fld.of_int(2), c_lead))
    for mu in monomial_basis(f.nvars, half):
        if mu >= lead_g:
            continue
        target = tuple(a + b for a, b in zip(lead_g, mu))
        acc = f.coeff(target)
        for alpha, ca in g.items():
            beta = tuple(t - a for t, a in zip(target, alpha))
            if any(e < 0 for e in beta):
                continue
            cb = g.get(beta)
            if cb is not None:
                acc = fld.sub(acc, fld.mul(ca, cb))
        c_mu = fld.mul(acc, two_lead_inv)
        if c_mu:
            g[mu] = c_mu
    root = make_poly(f.nvars, half, g, fld)
    if root * root == f:
        return root
    return None


# --- seeded random forms ----------------------------------------------------


def random_homo(nvars: int, degree: int, field: FieldSpec, seed: int) -> HomoPoly:
    """Seeded uniform random form: one splitmix64 draw per graded-lex monomial."""
    rng = SplitMix64(seed)
    terms: Dict[Monomial, Scalar] = {}
    for m in monomial_basis(nvars, degree):
        if field.is_prime_field:
            c = rng.below(field.p)
        else:
            c = Fraction(rng.below(19) - 9)
        if c:
            terms[m] = c
    return make_poly(nvars, degree, terms, field)


def embed_poly(f: HomoPoly, nvars: int, positions: Sequence[int]) -> HomoPoly:
    """Re-read f's variables at the given positions of a larger variable list."""
    if len(positions) != f.nvars:
        raise ValueError("positions must match f.nvars")
    terms: Dict[Monomial, Scalar] = {}
    for m, c in f.terms.items():
        e = [0] * nvars
        for pos, exp in zip(positions, m):
            e[pos] = exp
        terms[tuple(e)] = c
    return make_poly(nvars, f.degree, terms, f.field)


def linear_change(f: HomoPoly, matrix) -> HomoPoly:
    """Substitute x_i -> sum_j matrix[i][j] * x_j (rows give the images)."""
    fld = f.field
    images = []
    for i in range(f.nvars):
        terms = {}
        for j, c in enumerate(matrix[i]):
            if c:
                key = tuple(1 if k == j else 0 for k in range(f.nvars))
                terms[key] = c
        images.append(terms)
    out: Dict[Monomial, Scalar] = {}
    for m, c in f.terms.items():
        acc = {(0,) * f.nvars: c}
        for var, e in enumerate(m):
            for _ in range(e):
                acc = _mul_dicts(acc, images[var], fld)
        for k, v in acc.items():
            s = fld.add(out.get(k, fld.zero), v)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return make_poly(f.nvars, f.degree, out, fld)
