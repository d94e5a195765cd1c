"""The diamond, shuffle and triangle products on the word algebra.

All three products are F_q-bilinear and defined by mutual recursion on words.
For nonempty words a = x_{a1,alpha}·a' and b = x_{b1,beta}·b' (writing n for
a1 + b1 and juxtaposition for concatenation):

    a ⋄ b = x_{n,alpha·beta}(a' ⧢ b')
            + sum_{i+j=n, i,j>=1} D(a1,b1,j) · x_{i,alpha·beta}(x_{j,1} ⧢ (a' ⧢ b'))
    a ⧢ b = x_{a1,alpha}(a' ⧢ b) + x_{b1,beta}(a ⧢ b') + a ⋄ b
    a ▷ b = x_{a1,alpha}(a' ⧢ b)

with the empty word acting as unit for ⋄ and ⧢, and 1 ▷ a = a ▷ 1 = a.
The overlap coefficients are

    D(r,s,i) = (-1)^(r-1)·C(i-1,r-1) + (-1)^(s-1)·C(i-1,s-1)   if (q-1) | i,
               0 otherwise,

evaluated over the integers first and reduced mod p afterwards, so the signed
sum is never reduced prematurely.

Word-level results are memoized per field; the associativity and compatibility
checks would otherwise recompute identical subproblems exponentially often.
"""

from __future__ import annotations

from math import comb

from . import faults
from .ff import FieldElem, FieldSpec
from .words import EMPTY, Element, Letter, Word, letter, word_weight, _clean


def binom_mod_p(a: int, b: int, p: int) -> int:
    """C(a, b) mod p for integer a and b >= 0.

    Nonnegative a uses Lucas' theorem digitwise in base p; negative a is
    reflected through C(a, b) = (-1)^b C(b - a - 1, b).  C(a, 0) = 1 always.
    """
    if b < 0:
        raise ValueError("lower index must be >= 0")
    if b == 0:
        return 1 % p
    if a < 0:
        sign = -1 if b % 2 else 1
        return (sign * binom_mod_p(b - a - 1, b, p)) % p
    out = 1
    while a or b:
        da, db = a % p, b % p
        if db > da:
            return 0
        out = (out * comb(da, db)) % p
        a //= p
        b //= p
    return out


def delta_coeff(r: int, s: int, i: int, spec: FieldSpec) -> FieldElem:
    """The overlap coefficient D(r,s,i) as an element of the prime subfield."""
    if r < 1 or s < 1 or not 1 <= i <= r + s - 1:
        raise ValueError(f"delta index out of range: r={r} s={s} i={i}")
    fault = faults.active() == faults.DELTA_CORRUPT
    if not fault:
        cache = spec.memo("delta")
        hit = cache.get((r, s, i))
        if hit is not None:
            return hit
    if i % (spec.q - 1) == 0:
        m = (-1) ** (r - 1) * comb(i - 1, r - 1) + (-1) ** (s - 1) * comb(i - 1, s - 1)
    else:
        m = 0
    if fault and (r, s, i) == (1, 2, 2):
        m += 1
    val = spec.residue(m)
    if not fault:
        cache[(r, s, i)] = val
    return val


# -- word-level recursion ------------------------------------------------------


def _word_elem(spec: FieldSpec, w: Word) -> Element:
    return Element(spec, {w: spec.one})


def _shuffle_words(spec: FieldSpec, u: Word, v: Word) -> Element:
    if not u:
        return _word_elem(spec, v)
    if not v:
        return _word_elem(spec, u)
    cache = spec.memo("shuffle")
    key = (u, v)
    hit = cache.get(key)
    if hit is not None:
        return hit
    acc: dict = {}
    x, y = u[0], v[0]
    for w, c in _shuffle_words(spec, u[1:], v).terms.items():
        k = (x,) + w
        prev = acc.get(k)
        acc[k] = c if prev is None else prev + c
    for w, c in _shuffle_words(spec, u, v[1:]).terms.items():
        k = (y,) + w
        prev = acc.get(k)
        acc[k] = c if prev is None else prev + c
    for w, c in _diamond_words(spec, u, v).terms.items():
        prev = acc.get(w)
        acc[w] = c if prev is None else prev + c
    out = Element(spec, _clean(acc))
    cache[key] = out
    return out


def _diamond_words(spec: FieldSpec, u: Word, v: Word) -> Element:
    if not u:
        return _word_elem(spec, v)
    if not v:
        return _word_elem(spec, u)
    cache = spec.memo("diamond")
    key = (u, v)
    hit = cache.get(key)
    if hit is not None:
        return hit
    a1, alpha = u[0]
    b1, beta = v[0]
    tail = _shuffle_words(spec, u[1:], v[1:])
    eab = alpha * beta
    n = a1 + b1
    head = letter(spec, n, eab)
    acc: dict = {(head,) + w: c for w, c in tail.terms.items()}
    for j in range(1, n):
        dc = delta_coeff(a1, b1, j, spec)
        if dc.idx == 0:
            continue
        xj = _word_elem(spec, (letter(spec, j, spec.one),))
        mid = letter(spec, n - j, eab)
        for w, c in shuffle(xj, tail).terms.items():
            k = (mid,) + w
            cc = dc * c
            prev = acc.get(k)
            acc[k] = cc if prev is None else prev + cc
    out = Element(spec, _clean(acc))
    cache[key] = out
    return out


def _triangle_words(spec: FieldSpec, u: Word, v: Word) -> Element:
    if not u:
        return _word_elem(spec, v)
    if not v:
        return _word_elem(spec, u)
    head = u[0]
    inner = _shuffle_words(spec, u[1:], v)
    return Element(spec, {(head,) + w: c for w, c in inner.terms.items()})


# -- bilinear wrappers -----------------------------------------------------------


def _bilinear(op, a: Element, b: Element) -> Element:
    spec = a.spec
    acc: dict = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            c = ca * cb
            for w, cw in op(spec, wa, wb).terms.items():
                cc = c * cw
                prev = acc.get(w)
                acc[w] = cc if prev is None else prev + cc
    return Element(spec, _clean(acc))


def shuffle(a: Element, b: Element) -> Element:
    """The shuffle product; commutative, associative, unit 1."""
    return _bilinear(_shuffle_words, a, b)


def diamond(a: Element, b: Element) -> Element:
    """The diamond (overlap) product; commutative, associative, unit 1."""
    return _bilinear(_diamond_words, a, b)


def triangle(a: Element, b: Element) -> Element:
    """The triangle product a ▷ b = x_{a1,alpha}(a' ⧢ b); not commutative."""
    return _bilinear(_triangle_words, a, b)


def shuffle_words(spec: FieldSpec, *ws: Word) -> Element:
    """Shuffle of any number of words, folded left."""
    out = Element.one(spec)
    for w in ws:
        out = shuffle(out, _word_elem(spec, w))
    return out


def horizontal(alpha: FieldElem, a: Element) -> Element:
    """The map sending a nonempty word x_{u,eps}·u' to x_{u,alpha·eps}·u'
    (the empty word is fixed).  Weight-preserving and linear."""
    if alpha.idx == 0:
        raise ValueError("horizontal maps are indexed by units")
    spec = a.spec
    if alpha.idx == 1:
        return a
    acc: dict = {}
    for w, c in a.terms.items():
        if w:
            lt = w[0]
            w = (letter(spec, lt.n, alpha * lt.eps),) + w[1:]
        prev = acc.get(w)
        acc[w] = c if prev is None else prev + c
    return Element(spec, _clean(acc))


def bracket(w: Word, spec: FieldSpec) -> Element:
    """The signed overlap-weighted shuffle of the letters of a word with all
    characters trivial:

        [x_{i_1} ... x_{i_m}] = (-1)^m · prod_t D(1, wt+1, i_t) · (x_{i_1} ⧢ ... ⧢ x_{i_m})

    where wt is the weight of the word; [1] = 1.
    """
    for lt in w:
        if lt.eps.idx != 1:
            raise ValueError("bracket is defined on trivially-charactered words only")
    if not w:
        return Element.one(spec)
    cache = spec.memo("bracket")
    comp = tuple(lt.n for lt in w)
    hit = cache.get(comp)
    if hit is not None:
        return hit
    wt = sum(comp)
    coeff = spec.residue(-1) ** len(comp)
    for n in comp:
        coeff = coeff * delta_coeff(1, wt + 1, n, spec)
        if coeff.idx == 0:
            break
    if coeff.idx == 0:
        out = Element.zero(spec)
    else:
        out = shuffle_words(spec, *((lt,) for lt in w)).scale(coeff)
    cache[comp] = out
    return out
