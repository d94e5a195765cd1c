"""Exact arithmetic in small finite fields F_q with q = p^k.

Fields are described by a :class:`FieldSpec`, built once via :func:`field_make`
and then treated as immutable.  All q elements are created up front and every
arithmetic operation is a table lookup returning one of those shared values,
so elements can be used freely as dictionary keys in the word-algebra layers.

Units are printed in exponent form ``g^j`` where ``g`` is a fixed primitive
element chosen deterministically (the first element, in coordinate order,
whose multiplicative order is q - 1).  Zero prints as ``0``.
"""

from __future__ import annotations

MAX_Q = 64

# Fixed irreducible moduli (ascending coefficients, monic) used when the
# caller does not supply one.  Keeping a single table makes the element
# encoding, and hence every formatted result, reproducible across runs.
DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(tuple(out))


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    # m is monic; ordinary long division, remainder only.
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        lead = a[-1] % p
        if lead:
            off = len(a) - 1 - dm
            for i in range(dm):
                a[off + i] = (a[off + i] - lead * m[i]) % p
        a.pop()
    return _poly_trim(tuple(x % p for x in a))


def _monic_polys(p: int, deg: int):
    if deg == 0:
        yield (1,)
        return
    span = p**deg
    for v in range(span):
        coeffs = []
        t = v
        for _ in range(deg):
            coeffs.append(t % p)
            t //= p
        yield tuple(coeffs) + (1,)


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    k = len(m) - 1
    if k == 1:
        return True
    for d in range(1, k):
        for cand in _monic_polys(p, d):
            if not _poly_mod(m, cand, p):
                return False
    return True


class FieldElem:
    """A single element of F_q in polynomial-basis coordinates.

    Value type: equality and hashing go by (field, coordinates).  Instances
    are created only by :class:`FieldSpec`; arithmetic returns the shared
    instance for the resulting value.
    """

    __slots__ = ("coeffs", "spec", "idx", "_h")

    def __init__(self, coeffs: tuple[int, ...], spec: "FieldSpec", idx: int):
        self.coeffs = coeffs
        self.spec = spec
        self.idx = idx
        self._h = hash((spec.key, coeffs))

    def _check(self, other: "FieldElem") -> None:
        if self.spec is not other.spec and self.spec.key != other.spec.key:
            raise ValueError(
                f"field mismatch: F_{self.spec.q} vs F_{other.spec.q}"
            )

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.spec.key == other.spec.key and self.coeffs == other.coeffs

    def __hash__(self):
        return self._h

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return self.spec._add[self.idx][other.idx]

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return self.spec._add[self.idx][self.spec._neg[other.idx].idx]

    def __neg__(self) -> "FieldElem":
        return self.spec._neg[self.idx]

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return self.spec._mul[self.idx][other.idx]

    def __pow__(self, n: int) -> "FieldElem":
        if n == 0:
            return self.spec.one
        if self.idx == 0:
            if n < 0:
                raise ZeroDivisionError("0 cannot be raised to a negative power")
            return self
        # units form a cyclic group of order q - 1
        e = n % (self.spec.q - 1)
        out = self.spec.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "FieldElem":
        if self.idx == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self.spec._inv[self.idx]

    def is_zero(self) -> bool:
        return self.idx == 0

    def is_one(self) -> bool:
        return self.idx == 1

    def __repr__(self):
        return self.spec.format_elem(self)


class FieldSpec:
    """All tables for one field F_q.  Immutable after construction."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self.key = (p, k, modulus)
        q = self.q

        self.elements: tuple[FieldElem, ...] = tuple(
            FieldElem(self._digits(v), self, v) for v in range(q)
        )
        self.zero = self.elements[0]
        self.one = self.elements[1]

        self._add = [
            [self._from_coeffs(self._coeff_add(a.coeffs, b.coeffs)) for b in self.elements]
            for a in self.elements
        ]
        self._neg = [self._from_coeffs(tuple((-c) % p for c in a.coeffs)) for a in self.elements]
        self._mul = [
            [self._from_coeffs(self._coeff_mul(a.coeffs, b.coeffs)) for b in self.elements]
            for a in self.elements
        ]
        self._inv: list[FieldElem | None] = [None] * q
        for a in self.elements[1:]:
            for b in self.elements[1:]:
                if self._mul[a.idx][b.idx].idx == 1:
                    self._inv[a.idx] = b
                    break

        self.g = self._find_generator()
        self._gpow: list[FieldElem] = [self.one]
        for _ in range(q - 2):
            self._gpow.append(self._gpow[-1] * self.g)
        self._log = {e.idx: j for j, e in enumerate(self._gpow)}

        self._memos: dict[str, dict] = {}

    # -- construction helpers -------------------------------------------------

    def _digits(self, v: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return tuple(out)

    def _from_coeffs(self, coeffs: tuple[int, ...]) -> FieldElem:
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c
        return self.elements[v]

    def _coeff_add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _coeff_mul(self, a, b):
        if self.k == 1:
            return ((a[0] * b[0]) % self.p,)
        prod = _poly_mul(_poly_trim(a), _poly_trim(b), self.p)
        red = _poly_mod(prod, self.modulus, self.p)
        return red + (0,) * (self.k - len(red))

    def _find_generator(self) -> FieldElem:
        target = self.q - 1
        for cand in self.elements[1:]:
            x = cand
            order = 1
            while x.idx != 1:
                x = x * cand
                order += 1
            if order == target:
                return cand
        raise AssertionError("no generator found; field tables are broken")

    # -- element access and I/O ----------------------------------------------

    def elem(self, coeffs) -> FieldElem:
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coordinates, got {len(coeffs)}")
        return self._from_coeffs(coeffs)

    def residue(self, m: int) -> FieldElem:
        """The image of the integer m in the prime subfield."""
        return self.elements[m % self.p]

    def unit_from_exp(self, j: int) -> FieldElem:
        return self._gpow[j % (self.q - 1)]

    def log(self, e: FieldElem) -> int:
        """Discrete log base g of a unit."""
        if e.idx == 0:
            raise ZeroDivisionError("0 is not a unit")
        return self._log[e.idx]

    def format_elem(self, e: FieldElem) -> str:
        if e.idx == 0:
            return "0"
        return f"g^{self._log[e.idx]}"

    def parse_elem(self, text: str) -> FieldElem:
        """Parse a field literal: ``0``, ``g^j``, or (prime fields) a residue."""
        text = text.strip()
        if text == "0":
            return self.zero
        if text == "1":
            return self.one
        if text.startswith("g^"):
            try:
                j = int(text[2:])
            except ValueError:
                raise ValueError(f"bad field literal {text!r}") from None
            if j < 0:
                raise ValueError(f"bad field literal {text!r}")
            return self.unit_from_exp(j)
        if self.k == 1 and text.isdigit():
            return self.residue(int(text))
        raise ValueError(f"bad field literal {text!r}")

    # -- shared memo registry --------------------------------------------------

    def memo(self, name: str) -> dict:
        """A named per-field cache.  Results stored here are pure values, so
        concurrent writers can only race on identical data."""
        d = self._memos.get(name)
        if d is None:
            d = self._memos[name] = {}
        return d

    def clear_memos(self) -> None:
        for d in self._memos.values():
            d.clear()

    def __repr__(self):
        return f"FieldSpec(q={self.q})"


def field_make(p: int, k: int = 1, modulus=None) -> FieldSpec:
    """Build the spec for F_{p^k}.

    The modulus (degree-k irreducible over F_p, ascending coefficients) is
    only needed for k >= 2; if omitted, a fixed table entry is used.  The
    primitive element g is the smallest element in coordinate order that
    generates the unit group.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if k < 1:
        raise ValueError("extension degree k must be >= 1")
    q = p**k
    if q > MAX_Q:
        raise ValueError(f"q = {q} exceeds the supported maximum {MAX_Q}")
    if k == 1:
        return FieldSpec(p, 1, ())
    if modulus is None:
        try:
            mod = DEFAULT_MODULI[(p, k)]
        except KeyError:
            raise ValueError(f"no default modulus available for ({p}, {k})") from None
    else:
        mod = _poly_trim(tuple(c % p for c in modulus))
        if len(mod) != k + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not _is_irreducible(mod, p):
            raise ValueError("modulus is reducible")
    return FieldSpec(p, k, mod)


def field_from_q(q: int) -> FieldSpec:
    """Build the spec for F_q from the prime power q, using default moduli."""
    if q < 2:
        raise ValueError(f"q = {q} is not a prime power")
    p = 2
    while q % p:
        p += 1
        if p * p > q:
            p = q
            break
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"q = {q} is not a prime power")
    return field_make(p, k)
