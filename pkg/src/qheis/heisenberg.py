"""The deformed Heisenberg algebra on generators A, B with AB - qBA = I.

Basis monomials are encoded as pairs ``(k, d)`` where ``k`` is the
exponent of C = [A, B] and the signed integer ``d`` carries the letter
power: ``d < 0`` is a trailing ``A^(-d)``, ``d > 0`` a leading ``B^d``,
``d = 0`` a pure C power (and ``(0, 0)`` the identity).  ``d`` is exactly
the integer grade of the monomial, so the Z-gradation is the first-class
sort key.

Multiplication dispatches on the nine monomial-pair cases: three trivial
concatenations, four q-power commutations that move letter powers past C
powers, and two mixed cases that split on the comparison of the inner
letter exponents and expand through the structure scalars c_i, d_i.

An independent oracle is provided by free words in A, B: `reduce_word`
straightens a word polynomial into the B^a A^b normal form using only
the defining relation, and `ba_to_cbasis` converts normal words into the
C basis.  Round trips through `cbasis_to_free` tie the two routes
together.
"""

from __future__ import annotations

import json
from typing import Callable, Iterable, NamedTuple

from .qscalar import (
    ContextMismatchError,
    Scalar,
    ScalarContext,
    format_scalar,
    parse_scalar,
    q_int,
    scalar_text,
    scaled_struct_c,
    scaled_struct_d,
    struct_d,
)

__all__ = [
    "Monomial",
    "Element",
    "FreePoly",
    "MONO_I",
    "MONO_A",
    "MONO_B",
    "MONO_C",
    "multiply",
    "commutator",
    "grade",
    "graded_components",
    "reduce_word",
    "reduce_word_rewriting",
    "normal_word_product",
    "ba_to_cbasis",
    "cbasis_to_free",
    "free_to_element",
]


class Monomial(NamedTuple):
    k: int  # exponent of C = [A, B]
    d: int  # grade: -l encodes C^k A^l, +l encodes B^l C^k

    def text(self) -> str:
        def pw(letter: str, e: int) -> str:
            return letter if e == 1 else f"{letter}^{e}"

        if self.k == 0 and self.d == 0:
            return "I"
        if self.d == 0:
            return pw("C", self.k)
        if self.k == 0:
            return pw("A", -self.d) if self.d < 0 else pw("B", self.d)
        if self.d < 0:
            return f"{pw('C', self.k)}*{pw('A', -self.d)}"
        return f"{pw('B', self.d)}*{pw('C', self.k)}"


MONO_I = Monomial(0, 0)
MONO_A = Monomial(0, -1)
MONO_B = Monomial(0, 1)
MONO_C = Monomial(1, 0)


def grade(m: Monomial) -> int:
    """Z-grade of a basis monomial: the signed letter exponent d."""
    return m.d


def _mono_key(m: Monomial):
    return (m.d, m.k)


class Element:
    """A finite linear combination of basis monomials, canonically stored.

    Zero coefficients are removed eagerly; iteration follows the
    canonical order (grade d ascending, then k ascending).  Values are
    immutable: all arithmetic returns new elements.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: ScalarContext, terms: dict | None = None, _clean: bool = False):
        self.ctx = ctx
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            for m in terms:
                if m.k < 0:
                    raise ValueError(f"negative C exponent in {m}")
            self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ctx: ScalarContext) -> "Element":
        return cls(ctx, {}, _clean=True)

    @classmethod
    def monomial(cls, ctx: ScalarContext, m: Monomial, coeff: Scalar | None = None) -> "Element":
        if m.k < 0:
            raise ValueError(f"negative C exponent in {m}")
        c = ctx.one() if coeff is None else coeff
        if c.is_zero():
            return cls.zero(ctx)
        return cls(ctx, {m: c}, _clean=True)

    @classmethod
    def identity(cls, ctx: ScalarContext) -> "Element":
        return cls.monomial(ctx, MONO_I)

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0]))

    def coeff(self, m: Monomial) -> Scalar:
        return self.terms.get(m, self.ctx.zero())

    def support(self) -> list[Monomial]:
        return sorted(self.terms, key=_mono_key)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- linear structure -------------------------------------------------

    def __add__(self, other: "Element") -> "Element":
        self.ctx.ensure_same(other.ctx)
        out = dict(self.terms)
        for m, c in other.terms.items():
            got = out.get(m)
            s = c if got is None else got + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return Element(self.ctx, out, _clean=True)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.ctx, {m: -c for m, c in self.terms.items()}, _clean=True)

    def scale(self, s: Scalar) -> "Element":
        if s.is_zero():
            return Element.zero(self.ctx)
        return Element(self.ctx, {m: c * s for m, c in self.terms.items()}, _clean=True)

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative powers of elements are not defined")
        out = Element.identity(self.ctx)
        for _ in range(n):
            out = multiply(out, self)
        return out

    # -- gradation --------------------------------------------------------

    def graded_components(self) -> dict[int, "Element"]:
        buckets: dict[int, dict] = {}
        for m, c in self.terms.items():
            buckets.setdefault(m.d, {})[m] = c
        return {
            g: Element(self.ctx, t, _clean=True)
            for g, t in sorted(buckets.items())
        }

    def is_homogeneous(self) -> bool:
        return len({m.d for m in self.terms}) <= 1

    # -- rendering ----------------------------------------------------------

    def text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({scalar_text(c)})*{m.text()}" for m, c in self.items())

    def __repr__(self) -> str:
        return f"Element<{self.text()}>"

    def to_json_obj(self) -> dict:
        obj: dict = {"mode": self.ctx.mode}
        if self.ctx.is_torsion:
            obj["p"] = self.ctx.p
        obj["terms"] = [
            {"k": m.k, "d": m.d, "coeff": format_scalar(c)} for m, c in self.items()
        ]
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict, ctx: ScalarContext | None = None) -> "Element":
        mode = obj["mode"]
        if ctx is None:
            ctx = ScalarContext.torsion(obj["p"]) if mode == "torsion" else ScalarContext.generic()
        elif ctx.mode != mode or (mode == "torsion" and ctx.p != obj.get("p")):
            raise ContextMismatchError("serialized element belongs to a different context")
        terms = {}
        for t in obj["terms"]:
            m = Monomial(int(t["k"]), int(t["d"]))
            c = parse_scalar(t["coeff"], ctx)
            if not c.is_zero():
                terms[m] = c
        return cls(ctx, terms)

    @classmethod
    def from_json(cls, s: str, ctx: ScalarContext | None = None) -> "Element":
        return cls.from_json_obj(json.loads(s), ctx)


# ---------------------------------------------------------------------------
# Structure-constant multiplication (the nine monomial-pair cases)
# ---------------------------------------------------------------------------

def _mono_product(ctx: ScalarContext, x: Monomial, y: Monomial, fast: bool):
    """Product of two basis monomials as (Monomial, Scalar) pairs."""
    m, d1 = x
    k, d2 = y
    if d1 == 0 and d2 == 0:
        return ((Monomial(m + k, 0), ctx.one()),)
    if d1 == 0 and d2 < 0:
        return ((Monomial(m + k, d2), ctx.one()),)
    if d1 > 0 and d2 == 0:
        return ((Monomial(m + k, d1), ctx.one()),)
    if d1 < 0 and d2 == 0:
        return ((Monomial(m + k, d1), ctx.q_power(-d1 * k)),)
    if d1 < 0 and d2 < 0:
        return ((Monomial(m + k, d1 + d2), ctx.q_power(-d1 * k)),)
    if d1 == 0 and d2 > 0:
        return ((Monomial(m + k, d2), ctx.q_power(m * d2)),)
    if d1 > 0 and d2 > 0:
        return ((Monomial(m + k, d1 + d2), ctx.q_power(m * d2)),)
    if d1 < 0 and d2 > 0:
        # C^m A^n . B^l C^k, expanded through A^j B^j = sum c_i(j) C^i
        n, l = -d1, d2
        if n >= l:
            return tuple(
                (Monomial(m + i + k, -(n - l)), scaled_struct_c(ctx, i, l, (i + k) * (n - l), fast))
                for i in range(l + 1)
            )
        return tuple(
            (Monomial(m + i + k, l - n), scaled_struct_c(ctx, i, n, (m + i) * (l - n), fast))
            for i in range(n + 1)
        )
    # d1 > 0 and d2 < 0: B^n C^m . C^k A^l through B^j A^j = sum d_i(j) C^i
    n, l = d1, -d2
    if n >= l:
        return tuple(
            (Monomial(m + k + i, n - l), scaled_struct_d(ctx, i, l, -(m + k) * l, fast))
            for i in range(l + 1)
        )
    return tuple(
        (Monomial(m + k + i, -(l - n)), scaled_struct_d(ctx, i, n, -(m + k) * n, fast))
        for i in range(n + 1)
    )


def multiply(x: Element, y: Element, fast: bool = False) -> Element:
    """Bilinear extension of the nine basis-monomial product cases."""
    x.ctx.ensure_same(y.ctx)
    ctx = x.ctx
    out: dict = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            cxy = cx * cy
            if cxy.is_zero():
                continue
            for mono, coef in _mono_product(ctx, mx, my, fast):
                if coef.is_zero():
                    continue
                add = cxy * coef
                got = out.get(mono)
                s = add if got is None else got + add
                if s.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = s
    return Element(ctx, out, _clean=True)


def commutator(x: Element, y: Element, fast: bool = False) -> Element:
    """Lie bracket [x, y] = xy - yx."""
    return multiply(x, y, fast) - multiply(y, x, fast)


def graded_components(x: Element) -> dict[int, Element]:
    return x.graded_components()


# ---------------------------------------------------------------------------
# Free words and the straightening oracle
# ---------------------------------------------------------------------------

class FreePoly:
    """A scalar combination of words over {A, B}; '' is the identity word."""

    __slots__ = ("ctx", "words")

    def __init__(self, ctx: ScalarContext, words: dict | None = None):
        self.ctx = ctx
        self.words = {w: c for w, c in (words or {}).items() if not c.is_zero()}

    @classmethod
    def word(cls, ctx: ScalarContext, w: str, coeff: Scalar | None = None) -> "FreePoly":
        if set(w) - {"A", "B"}:
            raise ValueError(f"free words use the alphabet A, B only: {w!r}")
        return cls(ctx, {w: ctx.one() if coeff is None else coeff})

    def __add__(self, other: "FreePoly") -> "FreePoly":
        self.ctx.ensure_same(other.ctx)
        out = dict(self.words)
        for w, c in other.words.items():
            s = out.get(w, self.ctx.zero()) + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return FreePoly(self.ctx, out)

    def __neg__(self) -> "FreePoly":
        return FreePoly(self.ctx, {w: -c for w, c in self.words.items()})

    def __sub__(self, other: "FreePoly") -> "FreePoly":
        return self + (-other)

    def scale(self, s: Scalar) -> "FreePoly":
        return FreePoly(self.ctx, {w: c * s for w, c in self.words.items()})

    def __mul__(self, other: "FreePoly") -> "FreePoly":
        self.ctx.ensure_same(other.ctx)
        out: dict = {}
        for w1, c1 in self.words.items():
            for w2, c2 in other.words.items():
                w = w1 + w2
                s = out.get(w, self.ctx.zero()) + c1 * c2
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return FreePoly(self.ctx, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FreePoly)
            and self.ctx == other.ctx
            and self.words == other.words
        )

    def __repr__(self) -> str:
        return f"FreePoly({self.words})"


def _fold_letter(ctx: ScalarContext, state: dict, letter: str) -> dict:
    """Append one letter to a normal-form state {(b, a): coeff}.

    Uses A^a B = q^a B A^a + {a}_q A^(a-1), an iterate of the defining
    relation, so the result equals any exhaustive rewriting.
    """
    out: dict = {}

    def bump(key, val):
        got = out.get(key)
        s = val if got is None else got + val
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    for (b, a), c in state.items():
        if letter == "A":
            bump((b, a + 1), c)
        else:
            bump((b + 1, a), c * ctx.q_power(a))
            if a > 0:
                qa = q_int(ctx, a)
                if not qa.is_zero():
                    bump((b, a - 1), c * qa)
    return out


def reduce_word(fp: FreePoly) -> dict:
    """Normal form of a word polynomial: coefficients on pairs (a, b).

    Repeatedly applying AB -> qBA + I terminates with every word in the
    shape B^a A^b; the map returned sends (a, b) to its coefficient.
    The result is independent of rewrite order (confluence is checked
    separately by the exhaustive rewriter).
    """
    ctx = fp.ctx
    total: dict = {}
    for w, c in fp.words.items():
        state = {(0, 0): c}
        for letter in w:
            state = _fold_letter(ctx, state, letter)
        for key, coeff in state.items():
            got = total.get(key)
            s = coeff if got is None else got + coeff
            if s.is_zero():
                total.pop(key, None)
            else:
                total[key] = s
    return total


def reduce_word_rewriting(ctx: ScalarContext, word: str, choose: Callable[[list[int]], int] | None = None) -> dict:
    """Straighten a single word by literal AB -> qBA + I rewriting.

    `choose` picks which occurrence to rewrite from the list of AB
    positions (default: leftmost).  Exists to exercise confluence; the
    fast `reduce_word` is the production path.
    """
    pending = [(word, ctx.one())]
    done: dict = {}
    while pending:
        w, c = pending.pop()
        occ = [i for i in range(len(w) - 1) if w[i] == "A" and w[i + 1] == "B"]
        if not occ:
            key = (w.count("B"), w.count("A"))
            s = done.get(key, ctx.zero()) + c
            if s.is_zero():
                done.pop(key, None)
            else:
                done[key] = s
            continue
        i = occ[0] if choose is None else occ[choose(occ)]
        pending.append((w[:i] + "BA" + w[i + 2:], c * ctx.q_power(1)))
        pending.append((w[:i] + w[i + 2:], c))
    return {(b, a): c for (b, a), c in done.items()}


def ba_to_cbasis(a: int, b: int, ctx: ScalarContext) -> Element:
    """Express the normal word B^a A^b in the C basis.

    B^a A^b equals sum_i d_i(min(a,b)) applied to the matching basis
    family: C^i A^(b-a) when a <= b, B^(a-b) C^i when a > b.
    """
    if a < 0 or b < 0:
        raise ValueError("word exponents must be nonnegative")
    if a == 0 or b == 0:
        return Element.monomial(ctx, Monomial(0, a - b))
    j = min(a, b)
    d = -(b - a) if a <= b else a - b
    terms = {}
    for i in range(j + 1):
        c = struct_d(ctx, i, j)
        if not c.is_zero():
            terms[Monomial(i, d)] = c
    return Element(ctx, terms, _clean=True)


def cbasis_to_free(m: Monomial, ctx: ScalarContext) -> FreePoly:
    """Expand a basis monomial into free words via C = AB - BA."""
    if m.k < 0:
        raise ValueError("negative C exponent")
    c_power = ctx._pow_word.get(m.k)
    if c_power is None:
        c_power = FreePoly(ctx, {"": ctx.one()})
        c_gen = FreePoly(ctx, {"AB": ctx.one(), "BA": -ctx.one()})
        for _ in range(m.k):
            c_power = c_power * c_gen
        ctx._pow_word[m.k] = c_power
    if m.d == 0:
        return c_power
    if m.d < 0:
        return c_power * FreePoly.word(ctx, "A" * (-m.d))
    return FreePoly.word(ctx, "B" * m.d) * c_power


def free_to_element(fp: FreePoly) -> Element:
    """Oracle conversion: straighten a word polynomial, then change basis."""
    out = Element.zero(fp.ctx)
    for (a, b), c in reduce_word(fp).items():
        out = out + ba_to_cbasis(a, b, fp.ctx).scale(c)
    return out


def _letters_fold(ctx: ScalarContext, m: int, n: int) -> dict:
    """Normal form of A^m B^n, memoized per context."""
    got = ctx._awb.get((m, n))
    if got is None:
        state = {(0, m): ctx.one()}
        for _ in range(n):
            state = _fold_letter(ctx, state, "B")
        got = state
        ctx._awb[(m, n)] = got
    return got


def normal_word_product(ctx: ScalarContext, nf1: dict, nf2: dict) -> dict:
    """Straightened product of two already-straightened word polynomials.

    Inputs and output map (a, b) to the coefficient of B^a A^b.  Only the
    defining relation is used, through the memoized A^m B^n fold, so the
    result agrees with straightening the concatenated words directly
    (confluence) without materializing them.
    """
    out: dict = {}
    for (a1, b1), c1 in nf1.items():
        for (a2, b2), c2 in nf2.items():
            c = c1 * c2
            if c.is_zero():
                continue
            for (a, b), w in _letters_fold(ctx, b1, a2).items():
                key = (a + a1, b + b2)
                add = c * w
                got = out.get(key)
                s = add if got is None else got + add
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
    return out
