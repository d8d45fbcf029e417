"""Exact field arithmetic: rationals and cyclotomic numbers.

Scalars are either plain ``fractions.Fraction`` values or ``Cyclo``
instances representing elements of Q(zeta_n) as coefficient vectors of
length phi(n), reduced modulo the n-th cyclotomic polynomial.  Reduction
mod Phi_n (rather than x^n - 1) makes equality coefficientwise.

Arithmetic between a rational and a cyclotomic promotes the rational;
arithmetic between cyclotomics of different orders is an error.  Any
cyclotomic whose reduced vector is constant demotes back to a Fraction,
so a value has exactly one representation.
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction

__all__ = [
    "Cyclo",
    "zeta",
    "is_zero",
    "scalar_eq",
    "embed_complex",
    "render_scalar",
    "parse_scalar",
    "cyclotomic_polynomial",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    # both lists of Fraction, b nonzero; returns (quotient, remainder)
    a = list(a)
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _poly_trim(q), _poly_trim(a)


_cyclo_cache = {}


def cyclotomic_polynomial(n):
    """Coefficient list (ascending degree) of Phi_n over Q."""
    if n in _cyclo_cache:
        return _cyclo_cache[n]
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    p = [_ZERO] * (n + 1)
    p[0] = Fraction(-1)
    p[n] = _ONE
    p = _poly_trim(p)
    for d in range(1, n):
        if n % d == 0:
            p, r = _poly_divmod(p, cyclotomic_polynomial(d))
            assert not r
    _cyclo_cache[n] = p
    return p


_red_cache = {}


def _reduction_rows(n):
    # row i = x^(phi+i) mod Phi_n, as a vector of length phi
    if n in _red_cache:
        return _red_cache[n]
    phi_poly = cyclotomic_polynomial(n)
    phi = len(phi_poly) - 1
    rows = []
    cur = [-c for c in phi_poly[:-1]]  # x^phi = -(lower part), Phi monic
    rows.append(list(cur))
    for _ in range(phi - 2):
        nxt = [_ZERO] + cur[:-1]
        if cur[-1]:
            hi = cur[-1]
            for j in range(phi):
                nxt[j] += hi * rows[0][j]
        cur = nxt
        rows.append(list(cur))
    _red_cache[n] = (phi, rows)
    return _red_cache[n]


def _make(n, vec):
    # canonical constructor: demote constants to Fraction
    if all(c == 0 for c in vec[1:]):
        return vec[0]
    return Cyclo(n, vec, _internal=True)


class Cyclo:
    """An element of Q(zeta_n), n >= 3, as a residue mod Phi_n."""

    __slots__ = ("n", "vec")

    def __init__(self, n, vec, _internal=False):
        if not _internal:
            raise TypeError("use zeta(n) and arithmetic to build cyclotomics")
        self.n = n
        self.vec = tuple(vec)

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.n != self.n:
                raise ValueError(
                    "mixed cyclotomic orders %d and %d" % (self.n, other.n)
                )
            return other.vec
        if isinstance(other, (int, Fraction)):
            phi = len(self.vec)
            return (Fraction(other),) + (_ZERO,) * (phi - 1)
        return None

    def __add__(self, other):
        ov = self._coerce(other)
        if ov is None:
            return NotImplemented
        return _make(self.n, [a + b for a, b in zip(self.vec, ov)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, tuple(-a for a in self.vec), _internal=True)

    def __sub__(self, other):
        ov = self._coerce(other)
        if ov is None:
            return NotImplemented
        return _make(self.n, [a - b for a, b in zip(self.vec, ov)])

    def __rsub__(self, other):
        ov = self._coerce(other)
        if ov is None:
            return NotImplemented
        return _make(self.n, [b - a for a, b in zip(self.vec, ov)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return _ZERO
            return _make(self.n, [a * other for a in self.vec])
        ov = self._coerce(other)
        if ov is None:
            return NotImplemented
        phi = len(self.vec)
        prod = [_ZERO] * (2 * phi - 1)
        for i, a in enumerate(self.vec):
            if a:
                for j, b in enumerate(ov):
                    if b:
                        prod[i + j] += a * b
        _, rows = _reduction_rows(self.n)
        out = prod[:phi]
        for i in range(phi, 2 * phi - 1):
            c = prod[i]
            if c:
                row = rows[i - phi]
                for j in range(phi):
                    out[j] += c * row[j]
        return _make(self.n, out)

    __rmul__ = __mul__

    def _inverse(self):
        # extended gcd of self.vec with Phi_n in Q[x]
        a = list(self.vec)
        _poly_trim(a)
        b = cyclotomic_polynomial(self.n)
        # maintain u_a * orig_a + (...) * Phi = a
        u_a, u_b = [_ONE], []
        while b:
            q, r = _poly_divmod(a, b)
            # r = a - q*b ; new u = u_a - q*u_b
            qu = [_ZERO] * (len(q) + len(u_b) - 1) if q and u_b else []
            for i, qi in enumerate(q):
                if qi:
                    for j, uj in enumerate(u_b):
                        if uj:
                            qu[i + j] += qi * uj
            nu = [x - y for x, y in
                  zip(u_a + [_ZERO] * max(0, len(qu) - len(u_a)),
                      qu + [_ZERO] * max(0, len(u_a) - len(qu)))]
            a, b = b, r
            u_a, u_b = u_b, _poly_trim(nu)
        assert len(a) == 1, "not invertible mod Phi_n"
        lead = a[0]
        phi = len(self.vec)
        inv = [c / lead for c in u_a] + [_ZERO] * (phi - len(u_a))
        return _make(self.n, inv[:phi])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("scalar division by zero")
            return _make(self.n, [a / Fraction(other) for a in self.vec])
        ov = self._coerce(other)
        if ov is None:
            return NotImplemented
        return self * other._inverse()

    def __rtruediv__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        # the inverse of a non-constant residue is never constant
        return self._inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self._inverse() ** (-k)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base if isinstance(out, Cyclo) else base * out
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.n == other.n and self.vec == other.vec
        if isinstance(other, (int, Fraction)):
            return False  # canonical form: constants are Fractions
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.vec))

    def __bool__(self):
        return True  # canonical cyclotomics are never zero

    def __repr__(self):
        return render_scalar(self)


def zeta(n):
    """The primitive n-th root of unity as an exact scalar."""
    if n < 1:
        raise ValueError("zeta order must be positive")
    if n == 1:
        return _ONE
    if n == 2:
        return Fraction(-1)
    phi = len(cyclotomic_polynomial(n)) - 1
    vec = [_ZERO] * phi
    vec[1] = _ONE
    return Cyclo(n, vec, _internal=True)


def is_zero(a):
    return not isinstance(a, Cyclo) and a == 0


def scalar_eq(a, b):
    if isinstance(a, Cyclo) or isinstance(b, Cyclo):
        return a == b
    return Fraction(a) == Fraction(b)


def embed_complex(a):
    """Float approximation, zeta(n) evaluated at exp(2*pi*i/n)."""
    if not isinstance(a, Cyclo):
        return complex(a)
    z = cmath.exp(2j * cmath.pi / a.n)
    return sum(float(c) * z ** k for k, c in enumerate(a.vec))


def _render_poly(vec):
    terms = []
    for k, c in enumerate(vec):
        if c == 0:
            continue
        if k == 0:
            body = str(c)
        else:
            var = "z" if k == 1 else "z^%d" % k
            if c == 1:
                body = var
            elif c == -1:
                body = "-" + var
            else:
                body = "%s*%s" % (c, var)
        terms.append(body)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def render_scalar(a):
    """Rationals as p/q, cyclotomics as '(poly in z) @ zeta(n)'."""
    if isinstance(a, Cyclo):
        return "(%s) @ zeta(%d)" % (_render_poly(a.vec), a.n)
    return str(Fraction(a))


_TERM_RE = re.compile(
    r"^(?P<coef>[+-]?\d+(?:/\d+)?)?(?:(?(coef)\*|)(?P<var>z(?:\^(?P<pow>\d+))?))?$"
)


def parse_scalar(text):
    """Inverse of render_scalar."""
    text = text.strip()
    m = re.match(r"^\((?P<poly>.*)\)\s*@\s*zeta\((?P<n>\d+)\)$", text)
    if m is None:
        return Fraction(text)
    n = int(m.group("n"))
    phi = len(cyclotomic_polynomial(n)) - 1
    vec = [_ZERO] * phi
    poly = m.group("poly").replace(" - ", " + -").strip()
    for raw in poly.split(" + "):
        raw = raw.strip()
        if raw == "0":
            continue
        sign = 1
        while raw and raw[0] in "+-":
            if raw[0] == "-":
                sign = -sign
            raw = raw[1:].strip()
        tm = _TERM_RE.match(raw)
        if tm is None or (tm.group("coef") is None and tm.group("var") is None):
            raise ValueError("bad scalar term: %r" % raw)
        coef = tm.group("coef")
        c = sign * (Fraction(coef) if coef else Fraction(1))
        if tm.group("var") is None:
            k = 0
        else:
            k = int(tm.group("pow") or 1)
        if k >= phi:
            raise ValueError("term degree %d out of range for zeta(%d)" % (k, n))
        vec[k] += c
    return _make(n, vec)
