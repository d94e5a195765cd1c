"""Coproduct, counit and antipode for the shuffle algebra of words.

The coproduct of a letter is given by a closed formula built from the bracket
operator (no induction on weight):

    Δ(x_{n,eps}) = 1 ⊗ x_{n,eps}
                 + sum_{r>=1, a word over the trivial-character alphabet,
                        r + weight(a) = n}
                   C(r + depth(a) - 2, depth(a)) · x_{r,eps} ⊗ [a]

where the sum includes the empty word a = 1, whose summand is x_{n,eps} ⊗ 1
because C(n-2, 0) = 1 and [1] = 1.  Binomials follow the generalized
convention (C(-1, 0) = 1).

On deeper words it is pushed down by one recursion step per letter: writing
u = x·v with x a letter and Δ(x) = 1 ⊗ x + Σ a ⊗ b (each a a single letter),
Δ(v) = Σ c ⊗ d,

    Δ(u) = 1 ⊗ u + Σ (a·c) ⊗ (b ⧢ d),

where a·c is concatenation.  Everything extends linearly.

A second, fully independent construction of the depth-one coproduct on the
trivial-character subalgebra is kept as a cross-check oracle: it recurses on
weight through

    Δ(x_w) = Δ(x_1) ⧢ Δ(x_{w-1}) - Δ(x_1 x_{w-1}) - Δ(x_{w-1} x_1)
             - sum_{0<j<w} D(1,w-1,j) Δ(x_{w-j} x_j)

with depth-two coproducts expanded by the same one-step rule (using the
triangle product on left tensorands, which need not be single letters while
the recursion is still unrolling).  Agreement of the two routes is one of the
strongest internal consistency checks in the package.

The antipode comes from the connected graded recursion: S(1) = 1 and, for a
word u of positive weight with Δ(u) = 1 ⊗ u + u ⊗ 1 + Σ u' ⊗ u'' (both slots
of positive weight),

    S(u) = -u - Σ S(u') ⧢ u''.
"""

from __future__ import annotations

from . import faults
from .ff import FieldElem, FieldSpec
from .products import binom_mod_p, delta_coeff, bracket, shuffle, triangle, _shuffle_words
from .words import (
    EMPTY,
    Element,
    Letter,
    TensorElement,
    Word,
    compositions,
    letter,
    word_weight,
    _clean,
)


def coproduct_letter(x: Letter) -> TensorElement:
    """Δ of a single letter, by the closed formula above."""
    spec = x.eps.spec
    cache = spec.memo("coproduct_letter")
    hit = cache.get(x)
    if hit is not None:
        return hit
    n, eps = x
    acc: dict = {}
    if faults.active() != faults.DROP_UNIT_TENSOR:
        acc[(EMPTY, (x,))] = spec.one
    for r in range(1, n + 1):
        left = (letter(spec, r, eps),)
        for comp in compositions(n - r):
            m = len(comp)
            cb = binom_mod_p(r + m - 2, m, spec.p)
            if cb == 0:
                continue
            word = tuple(letter(spec, i, spec.one) for i in comp)
            br = bracket(word, spec)
            if br.is_zero():
                continue
            cbf = spec.residue(cb)
            for w, c in br.terms.items():
                k = (left, w)
                cc = cbf * c
                prev = acc.get(k)
                acc[k] = cc if prev is None else prev + cc
    out = TensorElement(spec, _clean(acc))
    cache[x] = out
    return out


def _coproduct_word(spec: FieldSpec, u: Word) -> TensorElement:
    if not u:
        return TensorElement.from_pair(spec, EMPTY, EMPTY)
    if len(u) == 1:
        return coproduct_letter(u[0])
    cache = spec.memo("coproduct")
    hit = cache.get(u)
    if hit is not None:
        return hit
    head, v = u[0], u[1:]
    dh = coproduct_letter(head)
    dv = _coproduct_word(spec, v)
    acc: dict = {}
    if faults.active() != faults.DROP_UNIT_TENSOR:
        acc[(EMPTY, u)] = spec.one
    for (al, bl), c1 in dh.terms.items():
        if not al:
            continue
        for (cl, dl), c2 in dv.terms.items():
            c12 = c1 * c2
            left = al + cl
            for w, c3 in _shuffle_words(spec, bl, dl).terms.items():
                k = (left, w)
                cc = c12 * c3
                prev = acc.get(k)
                acc[k] = cc if prev is None else prev + cc
    out = TensorElement(spec, _clean(acc))
    cache[u] = out
    return out


def coproduct(e: Element) -> TensorElement:
    """Δ extended linearly to the whole algebra; Δ(1) = 1 ⊗ 1."""
    spec = e.spec
    acc: dict = {}
    for w, c in e.terms.items():
        for k, cw in _coproduct_word(spec, w).terms.items():
            cc = c * cw
            prev = acc.get(k)
            acc[k] = cc if prev is None else prev + cc
    return TensorElement(spec, _clean(acc))


def counit(e: Element) -> FieldElem:
    """Coefficient of the empty word."""
    return e.terms.get(EMPTY, e.spec.zero)


def tensor_shuffle(s: TensorElement, t: TensorElement) -> TensorElement:
    """Componentwise shuffle on ordered pairs:
    (a ⊗ b) ⧢ (c ⊗ d) = (a ⧢ c) ⊗ (b ⧢ d), extended bilinearly."""
    spec = s.spec
    acc: dict = {}
    for (a, b), c1 in s.terms.items():
        for (c, d), c2 in t.terms.items():
            c12 = c1 * c2
            left = _shuffle_words(spec, a, c)
            right = _shuffle_words(spec, b, d)
            for lw, lc in left.terms.items():
                clc = c12 * lc
                for rw, rc in right.terms.items():
                    k = (lw, rw)
                    cc = clc * rc
                    prev = acc.get(k)
                    acc[k] = cc if prev is None else prev + cc
    return TensorElement(spec, _clean(acc))


def _antipode_word(spec: FieldSpec, u: Word) -> Element:
    if not u:
        return Element.one(spec)
    cache = spec.memo("antipode")
    hit = cache.get(u)
    if hit is not None:
        return hit
    lead = spec.one if faults.active() == faults.ANTIPODE_SIGN else -spec.one
    out = Element(spec, {u: lead})
    for (l, r), c in _coproduct_word(spec, u).terms.items():
        if not l or not r:
            continue
        term = shuffle(_antipode_word(spec, l), Element.from_word(spec, r))
        out = out - term.scale(c)
    cache[u] = out
    return out


def antipode(e: Element) -> Element:
    """The antipode of the connected graded structure; weight-preserving."""
    spec = e.spec
    out = Element.zero(spec)
    for w, c in e.terms.items():
        out = out + _antipode_word(spec, w).scale(c)
    return out


# -- independent weight-recursive oracle (trivial characters) -----------------


def _mzv_letter(spec: FieldSpec, n: int) -> TensorElement:
    cache = spec.memo("mzv_letter")
    hit = cache.get(n)
    if hit is not None:
        return hit
    x1 = letter(spec, 1, spec.one)
    if n == 1:
        out = TensorElement(
            spec, {(EMPTY, (x1,)): spec.one, ((x1,), EMPTY): spec.one}
        )
    else:
        xw1 = letter(spec, n - 1, spec.one)
        out = tensor_shuffle(_mzv_letter(spec, 1), _mzv_letter(spec, n - 1))
        out = out - _mzv_word(spec, (x1, xw1)) - _mzv_word(spec, (xw1, x1))
        for j in range(1, n):
            dc = delta_coeff(1, n - 1, j, spec)
            if dc.idx == 0:
                continue
            pair = (letter(spec, n - j, spec.one), letter(spec, j, spec.one))
            out = out - _mzv_word(spec, pair).scale(dc)
    cache[n] = out
    return out


def _mzv_word(spec: FieldSpec, u: Word) -> TensorElement:
    """The weight-recursive coproduct on a trivial-character word."""
    if not u:
        return TensorElement.from_pair(spec, EMPTY, EMPTY)
    if len(u) == 1:
        return _mzv_letter(spec, u[0].n)
    cache = spec.memo("mzv_word")
    hit = cache.get(u)
    if hit is not None:
        return hit
    head, v = u[0], u[1:]
    dh = _mzv_letter(spec, head.n)
    dv = _mzv_word(spec, v)
    acc: dict = {(EMPTY, u): spec.one}
    for (al, bl), c1 in dh.terms.items():
        if not al:
            continue
        for (cl, dl), c2 in dv.terms.items():
            c12 = c1 * c2
            left = triangle(
                Element.from_word(spec, al), Element.from_word(spec, cl)
            )
            right = _shuffle_words(spec, bl, dl)
            for lw, lc in left.terms.items():
                clc = c12 * lc
                for rw, rc in right.terms.items():
                    k = (lw, rw)
                    cc = clc * rc
                    prev = acc.get(k)
                    acc[k] = cc if prev is None else prev + cc
    out = TensorElement(spec, _clean(acc))
    cache[u] = out
    return out


def coproduct_mzv_recursive(n: int, spec: FieldSpec) -> TensorElement:
    """Δ(x_{n,1}) built by the weight recursion only.  Oracle use."""
    if n < 1:
        raise ValueError("weight must be >= 1")
    return _mzv_letter(spec, n)


def coproduct_mzv_word(u: Word, spec: FieldSpec) -> TensorElement:
    """Weight-recursive Δ on any trivial-character word.  Oracle use."""
    for lt in u:
        if lt.eps.idx != 1:
            raise ValueError("oracle coproduct needs trivial characters")
    return _mzv_word(spec, u)
