"""Lie polynomials in the generators A, B at a root of unity.

Provides the per-monomial Lie/not-Lie classification, membership
decision with residual, the forbidden-subspace projection, the explicit
nested-commutator constructors with their normalizations, constructive
witnesses (`BracketExpr` trees) for every claimed basis monomial, and a
brute-force bracket-closure oracle with exact row reduction.

Classification of the grade-0 column.  The documented characterization
lists every positive C power as a Lie polynomial, while the literal
spanning-set definition excludes C^n for n ≡ 1 (mod p), n >= 2.  Both
disagree with what the bracket closure actually generates: the grade-0
component of any commutator of basis monomials has an exactly vanishing
coefficient on every C^(np), and the remaining C powers are all reached
(C^n with n ≡ 1 mod p through the central-power bracket
[C^(n-2) A, B C] = C^n, the rest through the telescoped grade-0 chain).
The default classification therefore treats C^n as a Lie polynomial iff
n is not divisible by p; the `defn2_literal` flag switches to the
literal spanning-set reading so the closure oracle can document the
discrepancy, which the verification reports do.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

from .heisenberg import (
    Element,
    Monomial,
    MONO_A,
    MONO_B,
    MONO_C,
    commutator,
)
from .qscalar import (
    ContextMismatchError,
    Scalar,
    ScalarContext,
    q_int,
    scalar_text,
)

__all__ = [
    "MonomialClass",
    "NotLiePolynomialError",
    "ConstructionError",
    "classify_monomial",
    "is_lie_polynomial",
    "project_N",
    "base_A",
    "base_B",
    "base_G",
    "base_G_documented",
    "obase_A",
    "obase_B",
    "obase_G",
    "obase_G_documented",
    "special_A",
    "special_B",
    "Leaf",
    "Bracket",
    "ScaledSum",
    "BracketExpr",
    "eval_bracket_expr",
    "LieWitness",
    "construct_basis_element",
    "SubspaceBasis",
    "RowReducer",
    "lie_closure",
    "closure_rows",
]


class NotLiePolynomialError(ValueError):
    """Raised when a constructive witness is requested for a non-member."""


class ConstructionError(RuntimeError):
    """Raised when a constructor cannot produce its target exactly."""


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

class MonomialClass(NamedTuple):
    is_lie: bool
    in_N: bool   # member of the forbidden subspace (only when not Lie)
    reason: str

    @property
    def tag(self) -> str:
        return "LiePolynomial" if self.is_lie else "NotLie"


def _require_torsion(ctx: ScalarContext) -> None:
    if not ctx.is_torsion:
        raise ContextMismatchError("Lie-polynomial classification needs a torsion context")


def classify_monomial(ctx: ScalarContext, m: Monomial, defn2_literal: bool = False) -> MonomialClass:
    """Decide whether a basis monomial is a Lie polynomial in A, B.

    With `defn2_literal` the grade-0 column follows the literal
    spanning-set reading (C^n excluded when n >= 2 and n-1 ≡ 0 mod p)
    instead of the closure-backed default (C^n excluded iff p | n).
    """
    _require_torsion(ctx)
    p = ctx.p
    k, d = m
    if k < 0:
        raise ValueError("negative C exponent")
    if d == 0:
        if k == 0:
            return MonomialClass(False, False, "the identity monomial")
        if defn2_literal:
            if k >= 2 and (k - 1) % p == 0:
                return MonomialClass(False, False,
                                     "C power excluded by the literal spanning set (k-1 divisible by p)")
            return MonomialClass(True, False, "C power in the literal spanning set")
        if k % p == 0:
            return MonomialClass(False, False,
                                 "C power with exponent divisible by p (never generated by brackets)")
        return MonomialClass(True, False, "C power with exponent not divisible by p")
    l = abs(d)
    if k == 0:
        if l == 1:
            return MonomialClass(True, False, "a generator")
        return MonomialClass(False, False, f"pure letter power with exponent {l} >= 2")
    if k % p == 0 and l % p == 0:
        return MonomialClass(False, True,
                             "forbidden subspace: both exponents divisible by p")
    return MonomialClass(True, False, "mixed monomial with an exponent not divisible by p")


def project_N(x: Element) -> Element:
    """Component of x on the forbidden subspace.

    That subspace is spanned by the mixed basis monomials whose C
    exponent and letter exponent are both positive multiples of p.
    """
    _require_torsion(x.ctx)
    p = x.ctx.p
    terms = {
        m: c
        for m, c in x.terms.items()
        if m.k >= 1 and m.d != 0 and m.k % p == 0 and abs(m.d) % p == 0
    }
    return Element(x.ctx, terms, _clean=True)


def is_lie_polynomial(x: Element, defn2_literal: bool = False):
    """Membership decision: (verdict, residual on non-member monomials).

    An element is a Lie polynomial exactly when its coordinates on the
    non-member basis monomials all vanish, because the claimed basis
    monomials are linearly independent.
    """
    _require_torsion(x.ctx)
    residual_terms = {
        m: c
        for m, c in x.terms.items()
        if not classify_monomial(x.ctx, m, defn2_literal).is_lie
    }
    residual = Element(x.ctx, residual_terms, _clean=True)
    return residual.is_zero(), residual


# ---------------------------------------------------------------------------
# Bracket expression trees (constructive witnesses)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    gen: str  # "A" or "B"

    def text(self) -> str:
        return self.gen


@dataclass(frozen=True)
class Bracket:
    left: "BracketExpr"
    right: "BracketExpr"

    def text(self) -> str:
        return f"[{self.left.text()}, {self.right.text()}]"


@dataclass(frozen=True)
class ScaledSum:
    items: tuple  # of (Scalar, BracketExpr)

    def text(self) -> str:
        return " + ".join(f"({scalar_text(c)})*{e.text()}" for c, e in self.items)


BracketExpr = Leaf | Bracket | ScaledSum

_A = Leaf("A")
_B = Leaf("B")
_C = Bracket(_A, _B)


def eval_bracket_expr(ctx: ScalarContext, e: BracketExpr) -> Element:
    """Evaluate a witness tree inside the algebra."""
    if isinstance(e, Leaf):
        return Element.monomial(ctx, MONO_A if e.gen == "A" else MONO_B)
    if isinstance(e, Bracket):
        left = eval_bracket_expr(ctx, e.left)
        right = eval_bracket_expr(ctx, e.right)
        left.ctx.ensure_same(right.ctx)
        return commutator(left, right)
    out = Element.zero(ctx)
    for c, sub in e.items:
        out = out + eval_bracket_expr(ctx, sub).scale(c)
    return out


def _nest(head: BracketExpr, inner: BracketExpr, times: int) -> BracketExpr:
    for _ in range(times):
        inner = Bracket(head, inner)
    return inner


# ---------------------------------------------------------------------------
# The explicit constructors and their normalizations
# ---------------------------------------------------------------------------

def _elem(ctx: ScalarContext, k: int, d: int, coeff: Scalar | None = None) -> Element:
    return Element.monomial(ctx, Monomial(k, d), coeff)


def base_A(ctx: ScalarContext, k: int, l: int) -> Element:
    """((-ad C)^k o (-ad A)^(l+1))(B); equals -(1-q)^l (q^l-1)^k C^(k+1) A^l."""
    if k < 0 or l < 1:
        raise ValueError("base_A needs k >= 0 and l >= 1")
    a, c = _elem(ctx, 0, -1), _elem(ctx, 1, 0)
    v = _elem(ctx, 0, 1)
    for _ in range(l + 1):
        v = -commutator(a, v)
    for _ in range(k):
        v = -commutator(c, v)
    return v


def base_B(ctx: ScalarContext, k: int, l: int) -> Element:
    """((ad B)^(l-1) o (ad C)^k)([B,[B,A]]); equals (q-1)^(k+1) (1-q^(k+1))^(l-1) B^l C^(k+1)."""
    if k < 0 or l < 1:
        raise ValueError("base_B needs k >= 0 and l >= 1")
    b, c = _elem(ctx, 0, 1), _elem(ctx, 1, 0)
    v = commutator(b, commutator(b, _elem(ctx, 0, -1)))
    for _ in range(k):
        v = commutator(c, v)
    for _ in range(l - 1):
        v = commutator(b, v)
    return v


def base_G(ctx: ScalarContext, k: int) -> Element:
    """((ad B) o (-ad C)^k)([[B,A],A]).

    Exact closed form (established by direct evaluation and covered by
    the tests): (q-1)^(k+1) q^-(k+1) ({k+1}_q C^(k+1) - {k+2}_q C^(k+2)).
    """
    if k < 0:
        raise ValueError("base_G needs k >= 0")
    a, b, c = _elem(ctx, 0, -1), _elem(ctx, 0, 1), _elem(ctx, 1, 0)
    v = commutator(commutator(b, a), a)
    for _ in range(k):
        v = -commutator(c, v)
    return commutator(b, v)


def base_G_documented(ctx: ScalarContext, k: int) -> Element:
    """The documented closed form q^-k (q-1)^(k+1) (q {k}_q C^(k+1) - {k+1}_q C^(k+2)).

    Does not agree with the bracket evaluation `base_G`; kept so the
    verification suite can exhibit the mismatch.
    """
    q = ctx.q()
    pref = ctx.q_power(-k) * (q - ctx.one()) ** (k + 1)
    return (
        _elem(ctx, k + 1, 0, q * q_int(ctx, k)) - _elem(ctx, k + 2, 0, q_int(ctx, k + 1))
    ).scale(pref)


def obase_A(ctx: ScalarContext, k: int, l: int) -> Element:
    """Normalized form returning exactly C^(k+1) A^l; needs l not divisible by p."""
    if ctx.is_torsion and l % ctx.p == 0:
        raise ConstructionError(
            f"obase_A needs l not divisible by p (got l={l}, p={ctx.p}): q^l - 1 vanishes"
        )
    one, q = ctx.one(), ctx.q()
    pref = -((one - q).inverse() ** l) * ((q ** l - one).inverse() ** k)
    return base_A(ctx, k, l).scale(pref)


def obase_B(ctx: ScalarContext, k: int, l: int) -> Element:
    """Normalized form returning exactly B^l C^(k+1); needs k+1 not divisible by p."""
    if ctx.is_torsion and (k + 1) % ctx.p == 0:
        raise ConstructionError(
            f"obase_B needs k+1 not divisible by p (got k={k}, p={ctx.p}): 1 - q^(k+1) vanishes"
        )
    one, q = ctx.one(), ctx.q()
    pref = ((q - one).inverse() ** (k + 1)) * ((one - q ** (k + 1)).inverse() ** (l - 1))
    return base_B(ctx, k, l).scale(pref)


def obase_G(ctx: ScalarContext, k: int) -> Element:
    """Normalized grade-0 chain returning exactly C^(k+2).

    Uses the telescoped combination
        C^(k+2) = (C - q * sum_{i<=k} q^i (q-1)^-(i+1) base_G(i)) / {k+2}_q,
    which is exact whenever {k+2}_q is invertible, i.e. k+2 not
    divisible by p.  The documented normalization divides by 1-q^(k+1)
    instead and is rejected here: when k+2 ≡ 0 (mod p) no grade-0
    bracket combination reaches C^(k+2) at all, and when k+1 ≡ 0 the
    central-power bracket [C^k A, B C] is the construction that works.
    """
    _require_torsion(ctx)
    p = ctx.p
    if (k + 1) % p == 0:
        raise ConstructionError(
            f"obase_G needs k+1 not divisible by p (got k={k}, p={p}); "
            "use the central-power bracket [C^k A, B C] = C^(k+2) instead"
        )
    if (k + 2) % p == 0:
        raise ConstructionError(
            f"obase_G target C^{k + 2} has exponent divisible by p={p} "
            "and is not a Lie polynomial: no bracket combination reaches it"
        )
    one, q = ctx.one(), ctx.q()
    acc = Element.zero(ctx)
    for i in range(k + 1):
        acc = acc + base_G(ctx, i).scale(ctx.q_power(i) * ((q - one).inverse() ** (i + 1)))
    return (_elem(ctx, 1, 0) - acc.scale(q)).scale(q_int(ctx, k + 2).inverse())


def obase_G_documented(ctx: ScalarContext, k: int) -> Element:
    """The documented normalization (q^k / (1-q^(k+1))) sum (q-1)^-i base_G(i).

    Evaluates the stated formula verbatim (needs k+1 not divisible by
    p).  The verification suite compares it with C^(k+2).
    """
    _require_torsion(ctx)
    if (k + 1) % ctx.p == 0:
        raise ConstructionError("documented normalization divides by 1 - q^(k+1)")
    one, q = ctx.one(), ctx.q()
    acc = Element.zero(ctx)
    for i in range(k + 1):
        acc = acc + base_G(ctx, i).scale((q - one).inverse() ** i)
    return acc.scale(ctx.q_power(k) * (one - q ** (k + 1)).inverse())


def special_A(ctx: ScalarContext, k: int, l: int) -> Element:
    """[obase_A(k, l-1), A], the letter-power bump used when l ≡ 0 (mod p).

    Equals (1 - q^(k+1)) C^(k+1) A^l under the stated congruences
    (l ≡ 0, k+1 not ≡ 0 mod p).
    """
    return commutator(obase_A(ctx, k, l - 1), _elem(ctx, 0, -1))


def special_B(ctx: ScalarContext, k: int, l: int) -> Element:
    """[obase_B(k-1, l), C]; equals (1 - q^l) B^l C^(k+1) when k+1 ≡ 0, l not ≡ 0 (mod p)."""
    return commutator(obase_B(ctx, k - 1, l), _elem(ctx, 1, 0))


# ---------------------------------------------------------------------------
# Constructive witnesses
# ---------------------------------------------------------------------------

class LieWitness(NamedTuple):
    expr: BracketExpr
    value: Element


def _sign(ctx: ScalarContext, j: int) -> Scalar:
    return ctx.one() if j % 2 == 0 else -ctx.one()


def _witness_c_pow_a(ctx: ScalarContext, k: int, l: int) -> BracketExpr:
    """Witness tree for C^k A^l, l not divisible by p (k >= 0, l >= 1)."""
    one, q = ctx.one(), ctx.q()
    kk = k - 1  # chain parameter: target is C^(kk+1) A^l
    raw = _nest(_C, _nest(_A, _B, l + 1), kk)
    pref = -( (one - q).inverse() ** l) * ((q ** l - one).inverse() ** kk) * _sign(ctx, kk + l + 1)
    return ScaledSum(((pref, raw),))


def _witness_c_pow_a_np(ctx: ScalarContext, k: int, np_: int) -> BracketExpr:
    """Witness for C^k A^(np), k not divisible by p."""
    one, q = ctx.one(), ctx.q()
    kk = k - 1
    raw = Bracket(_A, _nest(_C, _nest(_A, _B, np_), kk))
    pref = (
        ((one - q) ** (1 - np_))
        * (one - q ** (kk + 1)).inverse()
        * ((q ** (np_ - 1) - one).inverse() ** kk)
        * _sign(ctx, kk + np_)
    )
    return ScaledSum(((pref, raw),))


def _witness_b_c_pow(ctx: ScalarContext, k: int, l: int) -> BracketExpr:
    """Witness for B^l C^k, k not divisible by p (k >= 1, l >= 1)."""
    one, q = ctx.one(), ctx.q()
    kk = k - 1
    raw = _nest(_B, _nest(_C, Bracket(_B, Bracket(_B, _A)), kk), l - 1)
    pref = ((q - one).inverse() ** (kk + 1)) * ((one - q ** (kk + 1)).inverse() ** (l - 1))
    return ScaledSum(((pref, raw),))


def _witness_b_c_pow_np(ctx: ScalarContext, np_: int, l: int) -> BracketExpr:
    """Witness for B^l C^(np), l not divisible by p."""
    one, q = ctx.one(), ctx.q()
    raw = Bracket(_C, _nest(_B, _nest(_C, Bracket(_B, Bracket(_B, _A)), np_ - 2), l - 1))
    pref = -(
        (one - q ** l).inverse()
        * ((q - one).inverse() ** (np_ - 1))
        * ((one - q ** (np_ - 1)).inverse() ** (l - 1))
    )
    return ScaledSum(((pref, raw),))


def _witness_c_pow(ctx: ScalarContext, n: int) -> BracketExpr:
    """Witness for C^n, n >= 2, n not divisible by p."""
    p = ctx.p
    one, q = ctx.one(), ctx.q()
    if n % p == 0:
        # reachable only under the literal spanning-set classification,
        # which the closure contradicts; there is nothing to construct
        raise ConstructionError(
            f"no bracket combination reaches C^{n}: its exponent is divisible by p={p}"
        )
    if n % p == 1:
        # central-power bracket: [C^(n-2) A, B C] = C^n when n-1 ≡ 0 (mod p);
        # n ≡ 1 (mod p) and n >= 2 force n >= p + 1, so n - 2 >= 1 here
        return Bracket(_witness_c_pow_a(ctx, n - 2, 1), _witness_b_c_pow(ctx, 1, 1))
    # telescoped grade-0 chain divided by {n}_q
    inv_n = q_int(ctx, n).inverse()
    items = [(inv_n, _C)]
    for i in range(n - 1):
        raw = Bracket(_B, _nest(_C, Bracket(Bracket(_B, _A), _A), i))
        coef = -(inv_n * ctx.q_power(i + 1) * ((q - one).inverse() ** (i + 1)) * _sign(ctx, i))
        items.append((coef, raw))
    return ScaledSum(tuple(items))


def construct_basis_element(ctx: ScalarContext, m: Monomial, defn2_literal: bool = False) -> LieWitness:
    """Constructive witness: a bracket expression evaluating exactly to m.

    Dispatch: generators and C are leaves / one bracket; C powers split
    on n mod p (central-power bracket when n ≡ 1, telescoped chain
    otherwise); mixed monomials use the normalized ad-chain matching the
    letter exponent (plain chain when it avoids p, the letter-power or
    grade-0 bump otherwise).  Raises for monomials that are not Lie
    polynomials, naming the classification row.
    """
    cls = classify_monomial(ctx, m, defn2_literal)
    if not cls.is_lie:
        raise NotLiePolynomialError(f"{m.text()} is not a Lie polynomial: {cls.reason}")
    p = ctx.p
    k, d = m
    if m == MONO_A:
        expr: BracketExpr = _A
    elif m == MONO_B:
        expr = _B
    elif m == MONO_C:
        expr = _C
    elif d == 0:
        expr = _witness_c_pow(ctx, k)
    elif d < 0:
        l = -d
        expr = _witness_c_pow_a(ctx, k, l) if l % p != 0 else _witness_c_pow_a_np(ctx, k, l)
    else:
        l = d
        expr = _witness_b_c_pow(ctx, k, l) if k % p != 0 else _witness_b_c_pow_np(ctx, k, l)
    value = eval_bracket_expr(ctx, expr)
    if value != Element.monomial(ctx, m):
        raise ConstructionError(
            f"witness for {m.text()} evaluated to {value.text()} instead"
        )
    return LieWitness(expr, value)


# ---------------------------------------------------------------------------
# Exact row reduction and the bracket-closure oracle
# ---------------------------------------------------------------------------

class RowReducer:
    """Incremental exact Gaussian elimination over the scalar field.

    Rows are elements with pairwise distinct leading monomials in the
    canonical order (grade, then C exponent); each stored row is
    normalized to leading coefficient one.
    """

    def __init__(self, ctx: ScalarContext):
        self.ctx = ctx
        self.rows: dict[Monomial, Element] = {}

    @staticmethod
    def _lead(x: Element) -> Monomial:
        return min(x.terms, key=lambda m: (m.d, m.k))

    def reduce(self, x: Element) -> Element:
        """Remainder of x against the current rows."""
        while x.terms:
            lead = self._lead(x)
            row = self.rows.get(lead)
            if row is None:
                return x
            x = x - row.scale(x.terms[lead])
        return x

    def insert(self, x: Element) -> Element | None:
        """Insert x; returns the normalized new row, or None if dependent."""
        rem = self.reduce(x)
        if rem.is_zero():
            return None
        rem = rem.scale(rem.terms[self._lead(rem)].inverse())
        self.rows[self._lead(rem)] = rem
        return rem

    def contains(self, x: Element) -> bool:
        return self.reduce(x).is_zero()

    def rref_rows(self) -> list[Element]:
        """Rows fully back-substituted, sorted by leading monomial."""
        order = sorted(self.rows, key=lambda m: (m.d, m.k))
        out: dict[Monomial, Element] = dict(self.rows)
        for i in range(len(order) - 1, -1, -1):
            lead = order[i]
            row = out[lead]
            for other_lead in order[:i]:
                other = out[other_lead]
                c = other.terms.get(lead)
                if c is not None:
                    out[other_lead] = other - row.scale(c)
        return [out[lead] for lead in order]


@dataclass(frozen=True)
class SubspaceBasis:
    """Row-reduced exact basis of a spanned subspace, windowed."""

    kmax: int
    dmax: int
    rows: tuple

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def contains(self, x: Element) -> bool:
        red = RowReducer(x.ctx)
        for r in self.rows:
            red.insert(r)
        return red.contains(x)

    def leading_monomials(self) -> list[Monomial]:
        return [RowReducer._lead(r) for r in self.rows]

    def text(self) -> str:
        return "\n".join(r.text() for r in self.rows)


def closure_rows(ctx: ScalarContext, depth: int, max_workers: int | None = None):
    """Echelonized generators of the bracket closure of {A, B} by degree.

    Degree counts generator leaves: A, B have degree 1 and a bracket of
    degrees a, b has degree a + b, so depth 6 includes e.g. the bracket
    of two degree-3 elements.  Returns (degree, row) pairs, unprojected;
    bracket results of one degree may be evaluated concurrently, while
    insertion into the shared reduction is a sequential barrier, so the
    output does not depend on scheduling.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    reducer = RowReducer(ctx)
    by_degree: dict[int, list[Element]] = {1: []}
    out = []
    for gen in (Element.monomial(ctx, MONO_A), Element.monomial(ctx, MONO_B)):
        row = reducer.insert(gen)
        if row is not None:
            by_degree[1].append(row)
            out.append((1, row))
    for deg in range(2, depth + 1):
        pairs = []
        for a in range(1, deg):
            b = deg - a
            if a > b or b not in by_degree or a not in by_degree:
                continue
            if a < b:
                pairs.extend(itertools.product(by_degree[a], by_degree[b]))
            else:
                rows_a = by_degree[a]
                pairs.extend((rows_a[i], rows_a[j])
                             for i in range(len(rows_a)) for j in range(i + 1, len(rows_a)))
        if max_workers and max_workers > 1:
            with ThreadPoolExecutor(max_workers=max_workers) as pool:
                results = list(pool.map(lambda xy: commutator(xy[0], xy[1]), pairs))
        else:
            results = [commutator(x, y) for x, y in pairs]
        fresh = []
        for res in results:
            row = reducer.insert(res)
            if row is not None:
                fresh.append(row)
                out.append((deg, row))
        if fresh:
            by_degree[deg] = fresh
    return out


def lie_closure(
    ctx: ScalarContext,
    depth: int,
    kmax: int,
    dmax: int,
    max_workers: int | None = None,
) -> SubspaceBasis:
    """Bracket-closure span of {A, B} up to the given degree, windowed.

    Every generated element is projected to the window (k <= kmax,
    |d| <= dmax) and the projections are row-reduced exactly into a
    deterministic reduced-echelon basis.
    """
    _require_torsion(ctx)
    reducer = RowReducer(ctx)
    for _, row in closure_rows(ctx, depth, max_workers=max_workers):
        projected = Element(
            ctx,
            {m: c for m, c in row.terms.items() if m.k <= kmax and abs(m.d) <= dmax},
            _clean=True,
        )
        if not projected.is_zero():
            reducer.insert(projected)
    return SubspaceBasis(kmax=kmax, dmax=dmax, rows=tuple(reducer.rref_rows()))
