"""Numerics over F_q[theta]: power sums and truncated zeta-like sums.

The completion at infinity is modeled by truncated Laurent series in
u = 1/theta.  A :class:`Laurent` value knows *all* coefficients of exponents
below its precision horizon ``prec``; the stored window starts at the
valuation ``val`` and everything below it is exactly zero.  Addition and
multiplication track the horizon, so comparisons on the common guaranteed
range are exact, never approximate.

Power sums over monic polynomials:

    S_d(arr)  = sum over chains d = deg a_1 > ... > deg a_n >= 0 of
                eps_1^{deg a_1} ... eps_n^{deg a_n} / (a_1^{s_1} ... a_n^{s_n})
    S_{<d}    = sum of S_m for 0 <= m < d

for a positive array arr = ((eps_1..eps_n); (s_1..s_n)).  ``power_sum_d``
enumerates chains literally (budget-guarded) and is the brute-force side of
every numeric identity check.  ``zeta_trunc`` sums S_d over d up to the
precision horizon; every summand has valuation >= d, so the truncated sum is
exact to the horizon.  Its per-degree power sums go through a faster
depth-one kernel: for a monic a = theta^d + c_{d-1}theta^{d-1} + ... + c_0,

    1/a^s = u^{ds} (1 + h(u))^{-s},   h(u) = sum_t c_{d-t} u^t,

and summing the expansion over all q^d coefficient vectors needs only the
first N - ds coefficients.  Whenever d > N - ds - 1 the truncated sum picks
up a factor q from each coefficient that cannot influence the window, and
q = 0 in characteristic p, so the whole power sum vanishes below the horizon;
the kernel therefore only ever enumerates q^d vectors with d(s+1) < N.  This
route is cross-checked against the chain enumerator in the test suite.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .ff import FieldElem, FieldSpec
from .words import EMPTY, Element, Word, letter

DEFAULT_BUDGET = 10**6


class BudgetExceededError(RuntimeError):
    """Raised when a power-sum enumeration would exceed its chain budget."""


# -- polynomials in theta ------------------------------------------------------


class Poly:
    """Polynomial over F_q, ascending coefficients, no trailing zeros."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs):
        coeffs = tuple(coeffs)
        while coeffs and coeffs[-1].idx == 0:
            coeffs = coeffs[:-1]
        self.spec = spec
        self.coeffs = coeffs

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, ())

    @classmethod
    def one(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, (spec.one,))

    @classmethod
    def theta(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, (spec.zero, spec.one))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].idx == 1

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly.zero(self.spec)
        spec = self.spec
        out = [spec.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.idx == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(spec, out)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial powers are not defined")
        out = Poly.one(self.spec)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.spec.key == other.spec.key and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec.key, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.idx == 0:
                continue
            var = "" if i == 0 else ("theta" if i == 1 else f"theta^{i}")
            if i == 0:
                parts.append("1" if c.idx == 1 else self.spec.format_elem(c))
            elif c.idx == 1:
                parts.append(var)
            else:
                parts.append(f"{self.spec.format_elem(c)}*{var}")
        return " + ".join(parts)


def monic_enum(d: int, spec: FieldSpec, budget: int = DEFAULT_BUDGET) -> list[Poly]:
    """All q^d monic polynomials of degree d, in a fixed counting order."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    if spec.q**d > budget:
        raise BudgetExceededError(f"q^d = {spec.q}^{d} exceeds budget {budget}")
    out = []
    for v in range(spec.q**d):
        coeffs = []
        t = v
        for _ in range(d):
            coeffs.append(spec.elements[t % spec.q])
            t //= spec.q
        coeffs.append(spec.one)
        out.append(Poly(spec, coeffs))
    return out


# -- truncated Laurent series in u = 1/theta ------------------------------------


class Laurent:
    """Series with exact coefficients for all exponents below ``prec``.

    ``coeffs[i]`` is the coefficient of u^(val+i); exponents below ``val``
    are exactly zero.  Normal form has no zero at either end of the window.
    """

    __slots__ = ("spec", "val", "coeffs", "prec")

    def __init__(self, spec: FieldSpec, val: int, coeffs, prec: int):
        coeffs = list(coeffs)
        if val + len(coeffs) > prec:
            coeffs = coeffs[: max(0, prec - val)]
        while coeffs and coeffs[0].idx == 0:
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1].idx == 0:
            coeffs.pop()
        if not coeffs:
            val = prec
        self.spec = spec
        self.val = val
        self.coeffs = tuple(coeffs)
        self.prec = prec

    @classmethod
    def zero(cls, spec: FieldSpec, prec: int) -> "Laurent":
        return cls(spec, prec, (), prec)

    @classmethod
    def one(cls, spec: FieldSpec, prec: int) -> "Laurent":
        return cls(spec, 0, (spec.one,), prec)

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int | None:
        """Valuation of the known part; None if zero below the horizon."""
        return self.val if self.coeffs else None

    def coeff(self, e: int) -> FieldElem:
        if e >= self.prec:
            raise ValueError(f"coefficient of u^{e} is beyond precision {self.prec}")
        if self.val <= e < self.val + len(self.coeffs):
            return self.coeffs[e - self.val]
        return self.spec.zero

    def truncate(self, prec: int) -> "Laurent":
        if prec >= self.prec:
            return self
        return Laurent(self.spec, self.val, self.coeffs, prec)

    def __add__(self, other: "Laurent") -> "Laurent":
        prec = min(self.prec, other.prec)
        if not self.coeffs:
            return other.truncate(prec)
        if not other.coeffs:
            return self.truncate(prec)
        lo = min(self.val, other.val)
        hi = min(prec, max(self.val + len(self.coeffs), other.val + len(other.coeffs)))
        out = []
        for e in range(lo, hi):
            a = self.coeffs[e - self.val] if self.val <= e < self.val + len(self.coeffs) else self.spec.zero
            b = other.coeffs[e - other.val] if other.val <= e < other.val + len(other.coeffs) else other.spec.zero
            out.append(a + b)
        return Laurent(self.spec, lo, out, prec)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + other.scale(-self.spec.one)

    def scale(self, c: FieldElem) -> "Laurent":
        if c.idx == 0:
            return Laurent.zero(self.spec, self.prec)
        return Laurent(self.spec, self.val, [c * x for x in self.coeffs], self.prec)

    def __mul__(self, other: "Laurent") -> "Laurent":
        # unknown tail of one factor first pollutes exponent prec_a + val_b
        prec = min(self.prec + other.val, other.prec + self.val)
        if not self.coeffs or not other.coeffs:
            return Laurent.zero(self.spec, prec)
        lo = self.val + other.val
        width = min(prec - lo, len(self.coeffs) + len(other.coeffs) - 1)
        out = [self.spec.zero] * width
        for i, a in enumerate(self.coeffs):
            if a.idx == 0:
                continue
            jmax = min(len(other.coeffs), width - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if b.idx:
                    out[i + j] = out[i + j] + a * b
        return Laurent(self.spec, lo, out, prec)

    def agrees_with(self, other: "Laurent") -> bool:
        """Coefficient equality on the common guaranteed range."""
        prec = min(self.prec, other.prec)
        a, b = self.truncate(prec), other.truncate(prec)
        return a.val == b.val and a.coeffs == b.coeffs

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            return NotImplemented
        return (
            self.spec.key == other.spec.key
            and self.val == other.val
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((self.spec.key, self.val, self.coeffs, self.prec))

    def __repr__(self):
        return format_laurent(self)


def _fmt_exp(e: int) -> str:
    return f"u^({e})" if e < 0 else f"u^{e}"


def format_laurent(x: Laurent) -> str:
    parts = []
    for i, c in enumerate(x.coeffs):
        if c.idx == 0:
            continue
        e = x.val + i
        cs = x.spec.format_elem(c)
        if e == 0:
            parts.append("1" if c.idx == 1 else cs)
        else:
            ue = "u" if e == 1 else _fmt_exp(e)
            parts.append(ue if c.idx == 1 else f"{cs}*{ue}")
    if not parts:
        parts = ["0"]
    parts.append(f"O({_fmt_exp(x.prec)})")
    return " + ".join(parts)


_LTERM_RE = re.compile(r"^(?:(?P<coeff>g\^\d+|\d+)\*?)?(?:u(?:\^(?P<exp>\(?-?\d+\)?))?)?$")


def parse_laurent(text: str, spec: FieldSpec) -> Laurent:
    """Parse the output of :func:`format_laurent` (tests use this)."""
    coeffs: dict[int, FieldElem] = {}
    prec = None
    for raw in text.strip().split(" + "):
        term = raw.strip()
        if term.startswith("O("):
            inner = term[2:-1]
            if not inner.startswith("u^") and inner != "u":
                raise ValueError(f"bad precision marker {term!r}")
            prec = 1 if inner == "u" else int(inner[2:].strip("()"))
            continue
        if term == "0":
            continue
        m = _LTERM_RE.match(term)
        if m is None or (m.group("coeff") is None and "u" not in term):
            raise ValueError(f"bad series term {term!r}")
        c = spec.parse_elem(m.group("coeff")) if m.group("coeff") else spec.one
        if "u" in term:
            e = 1 if m.group("exp") is None else int(m.group("exp").strip("()"))
        else:
            e = 0
        coeffs[e] = coeffs.get(e, spec.zero) + c
    if prec is None:
        raise ValueError("series text must end with a precision marker O(u^N)")
    if not coeffs:
        return Laurent.zero(spec, prec)
    lo = min(coeffs)
    return Laurent(spec, lo, [coeffs.get(e, spec.zero) for e in range(lo, prec)], prec)


# -- positive arrays -------------------------------------------------------------


@dataclass(frozen=True)
class ZetaArray:
    """The index ((eps_1..eps_n); (s_1..s_n)) of a power sum; depth >= 1."""

    eps: tuple[FieldElem, ...]
    s: tuple[int, ...]

    def __post_init__(self):
        if len(self.eps) != len(self.s) or not self.s:
            raise ValueError("array needs matching nonempty character and weight rows")
        if any(x < 1 for x in self.s):
            raise ValueError("weights must be positive")
        if any(e.idx == 0 for e in self.eps):
            raise ValueError("characters must be units")

    @property
    def depth(self) -> int:
        return len(self.s)

    @property
    def spec(self) -> FieldSpec:
        return self.eps[0].spec

    def tail(self) -> "ZetaArray | None":
        if self.depth == 1:
            return None
        return ZetaArray(self.eps[1:], self.s[1:])

    def key(self):
        return tuple(zip(self.s, (e.idx for e in self.eps)))


def word_to_array(w: Word) -> ZetaArray:
    """x_{s_1,e_1}...x_{s_n,e_n}  ->  ((e_1..e_n); (s_1..s_n))."""
    if not w:
        raise ValueError("the empty word has no array presentation")
    return ZetaArray(tuple(lt.eps for lt in w), tuple(lt.n for lt in w))


def array_to_word(arr: ZetaArray, spec: FieldSpec) -> Word:
    return tuple(letter(spec, n, e) for n, e in zip(arr.s, arr.eps))


# -- power sums by literal chain enumeration --------------------------------------


def laurent_inv_pow(a: Poly, s: int, prec_coeffs: int) -> Laurent:
    """1/a^s for monic a, with ``prec_coeffs`` correct coefficients from the
    valuation s*deg(a) on (geometric-series expansion of the unit part)."""
    if not a.coeffs:
        raise ValueError("cannot invert the zero polynomial")
    if not a.is_monic():
        raise ValueError("inverse powers are taken of monic polynomials only")
    if s < 1:
        raise ValueError("exponent must be >= 1")
    spec = a.spec
    cache = spec.memo("inv_pow")
    key = (a.coeffs, s, prec_coeffs)
    hit = cache.get(key)
    if hit is not None:
        return hit
    b = a**s
    v = b.degree
    # a^s = theta^v (1 + h(u)) with h_t the coefficient of theta^(v-t)
    h = [spec.zero] * prec_coeffs
    for t in range(1, min(v, prec_coeffs - 1) + 1):
        h[t] = b.coeffs[v - t]
    g = [spec.zero] * prec_coeffs
    g[0] = spec.one
    for m in range(1, prec_coeffs):
        acc = spec.zero
        for t in range(1, m + 1):
            if h[t].idx:
                acc = acc + h[t] * g[m - t]
        g[m] = -acc
    out = Laurent(spec, v, g, v + prec_coeffs)
    cache[key] = out
    return out


def _chain_degrees(d: int, depth: int):
    for rest in itertools.combinations(range(d), depth - 1):
        yield (d,) + tuple(reversed(rest))


def power_sum_d(arr: ZetaArray, d: int, N: int, budget: int = DEFAULT_BUDGET) -> Laurent:
    """S_d(arr) to absolute precision N, by enumerating every chain of monic
    polynomials with strictly decreasing degrees d = deg a_1 > ... >= 0."""
    spec = arr.spec
    n = arr.depth
    if d < 0 or d < n - 1:
        return Laurent.zero(spec, N)
    cache = spec.memo("power_sum_d")
    key = (arr.key(), d, N)
    hit = cache.get(key)
    if hit is not None:
        return hit
    q = spec.q
    total = sum(q ** sum(degs) for degs in _chain_degrees(d, n))
    if total > budget:
        raise BudgetExceededError(
            f"power sum needs {total} chains, over budget {budget}"
        )
    acc = Laurent.zero(spec, N)
    for degs in _chain_degrees(d, n):
        scalar = spec.one
        for e, di in zip(arr.eps, degs):
            scalar = scalar * e**di
        for polys in itertools.product(*(monic_enum(di, spec, budget) for di in degs)):
            term = laurent_inv_pow(polys[0], arr.s[0], N)
            for a, si in zip(polys[1:], arr.s[1:]):
                term = term * laurent_inv_pow(a, si, N)
            acc = acc + term.scale(scalar)
    acc = acc.truncate(N)
    cache[key] = acc
    return acc


def power_sum_lt(arr: ZetaArray, d: int, N: int, budget: int = DEFAULT_BUDGET) -> Laurent:
    """S_{<d}(arr) = sum of S_m(arr) over 0 <= m < d, absolute precision N."""
    spec = arr.spec
    acc = Laurent.zero(spec, N)
    for m in range(max(d, 0)):
        acc = acc + power_sum_d(arr, m, N, budget)
    return acc


def power_sum_lt_element(e: Element, d: int, N: int, budget: int = DEFAULT_BUDGET) -> Laurent:
    """Linear extension of S_{<d} to the word algebra; the empty word maps to 1."""
    spec = e.spec
    acc = Laurent.zero(spec, N)
    for w, c in e.terms.items():
        if not w:
            acc = acc + Laurent.one(spec, N).scale(c)
        else:
            acc = acc + power_sum_lt(word_to_array(w), d, N, budget).scale(c)
    return acc


def power_sum_d_element(e: Element, d: int, N: int, budget: int = DEFAULT_BUDGET) -> Laurent:
    """Linear extension of S_d; the empty word maps to 1 for d = 0, else 0."""
    spec = e.spec
    acc = Laurent.zero(spec, N)
    for w, c in e.terms.items():
        if not w:
            if d == 0:
                acc = acc + Laurent.one(spec, N).scale(c)
        else:
            acc = acc + power_sum_d(word_to_array(w), d, N, budget).scale(c)
    return acc


# -- fast per-degree kernel for the zeta map --------------------------------------


def _idx_tables(spec: FieldSpec):
    cache = spec.memo("idx_tables")
    hit = cache.get("t")
    if hit is None:
        add = [[e.idx for e in row] for row in spec._add]
        mul = [[e.idx for e in row] for row in spec._mul]
        neg = [e.idx for e in spec._neg]
        hit = cache["t"] = (add, mul, neg)
    return hit


def _depth1_power_sum(spec: FieldSpec, s: int, d: int, N: int,
                      budget: int = DEFAULT_BUDGET) -> Laurent:
    """S_d((1); (s)) to absolute precision N, summing the expansions of
    1/a^s over all monic a of degree d but only on the window that survives
    the characteristic-p collapse (see module docstring)."""
    if d == 0:
        return Laurent.one(spec, N)
    v = d * s
    if v >= N or d * (s + 1) >= N:
        return Laurent.zero(spec, N)
    cache = spec.memo("depth1_power_sum")
    key = (s, d, N)
    hit = cache.get(key)
    if hit is not None:
        return hit
    q = spec.q
    if q**d > budget:
        raise BudgetExceededError(f"q^d = {q}^{d} exceeds budget {budget}")
    M = N - v
    add, mul, neg = _idx_tables(spec)
    total = [0] * M
    for vec in itertools.product(range(q), repeat=d):
        base = [0] * M
        base[0] = 1
        for t in range(1, d + 1):
            base[t] = vec[t - 1]
        # (1 + h)^s, then its reciprocal, both mod u^M
        pw = base if s == 1 else _series_pow(base, s, M, add, mul)
        g = [0] * M
        g[0] = 1
        for m in range(1, M):
            acc = 0
            for t in range(1, m + 1):
                ht = pw[t]
                if ht:
                    acc = add[acc][mul[ht][g[m - t]]]
            g[m] = neg[acc]
        for m in range(M):
            total[m] = add[total[m]][g[m]]
    out = Laurent(spec, v, [spec.elements[i] for i in total], N)
    cache[key] = out
    return out


def _series_pow(base: list[int], s: int, M: int, add, mul) -> list[int]:
    out = [0] * M
    out[0] = 1
    cur = base
    while s:
        if s & 1:
            out = _series_mul(out, cur, M, add, mul)
        s >>= 1
        if s:
            cur = _series_mul(cur, cur, M, add, mul)
    return out


def _series_mul(a: list[int], b: list[int], M: int, add, mul) -> list[int]:
    out = [0] * M
    for i, ai in enumerate(a):
        if ai:
            row = mul[ai]
            for j in range(M - i):
                bj = b[j]
                if bj:
                    out[i + j] = add[out[i + j]][row[bj]]
    return out


def _sd_fast(spec: FieldSpec, arr: ZetaArray, d: int, N: int, budget: int) -> Laurent:
    if d < 0 or d < arr.depth - 1:
        return Laurent.zero(spec, N)
    cache = spec.memo("sd_fast")
    key = (arr.key(), d, N)
    hit = cache.get(key)
    if hit is not None:
        return hit
    head = _depth1_power_sum(spec, arr.s[0], d, N, budget)
    if head.is_zero():
        out = Laurent.zero(spec, N)
    else:
        tail = arr.tail()
        rest = Laurent.one(spec, N) if tail is None else _slt_fast(spec, tail, d, N, budget)
        out = (head * rest).scale(arr.eps[0] ** d).truncate(N)
    cache[key] = out
    return out


def _slt_fast(spec: FieldSpec, arr: ZetaArray, d: int, N: int, budget: int) -> Laurent:
    if d <= 0:
        return Laurent.zero(spec, N)
    cache = spec.memo("slt_fast")
    key = (arr.key(), d, N)
    hit = cache.get(key)
    if hit is not None:
        return hit
    out = Laurent.zero(spec, N)
    for m in range(d):
        out = out + _sd_fast(spec, arr, m, N, budget)
    cache[key] = out
    return out


def zeta_trunc(e: Element, N: int, budget: int = DEFAULT_BUDGET) -> Laurent:
    """The truncated zeta value of an element, exact to precision N.

    On a word this is sum_{d=0}^{N} S_d; summands with d(s_1+1) >= N cannot
    touch the window and are skipped.  The empty word maps to 1; the map is
    linear.
    """
    spec = e.spec
    acc = Laurent.zero(spec, N)
    cache = spec.memo("zeta_word")
    for w, c in e.terms.items():
        if not w:
            acc = acc + Laurent.one(spec, N).scale(c)
            continue
        key = (w, N)
        z = cache.get(key)
        if z is None:
            arr = word_to_array(w)
            z = Laurent.zero(spec, N)
            for d in range(N + 1):
                if d * (arr.s[0] + 1) >= N and d > 0:
                    break
                z = z + _sd_fast(spec, arr, d, N, budget)
            cache[key] = z
        acc = acc + z.scale(c)
    return acc
