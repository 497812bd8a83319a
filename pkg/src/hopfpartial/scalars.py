"""Exact arithmetic in cyclotomic-rational fields Q(zeta_N).

Elements are represented on the power basis 1, z, ..., z^(phi(N)-1) of
Q[x]/Phi_N(x), with Phi_N the N-th cyclotomic polynomial.  Since Phi_N is
irreducible over Q the quotient is a field, so every nonzero element has an
inverse.  Orders are promoted to the lcm when two elements meet.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DivisionByZeroScalar(ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# dense polynomial helpers over Fraction, low-degree-first coefficient lists
# ---------------------------------------------------------------------------

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod(p, q):
    # q must be nonzero; exact division over Q
    p = _poly_trim(list(p))
    dq = len(q) - 1
    lead = q[-1]
    quo = [_ZERO] * max(len(p) - dq, 0)
    while p and len(p) - 1 >= dq:
        dp = len(p) - 1
        c = p[-1] / lead
        quo[dp - dq] = c
        for i in range(dq + 1):
            p[dp - dq + i] -= c * q[i]
        _poly_trim(p)
    return _poly_trim(quo), p


def _poly_egcd(a, b):
    # extended gcd over Q[x]: returns (g, u, v) with u*a + v*b = g
    r0, r1 = list(a), list(b)
    s0, s1 = [_ONE], []
    t0, t1 = [], [_ONE]
    while _poly_trim(r1):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
    return r0, s0, t0


def _poly_sub(p, q):
    n = max(len(p), len(q))
    out = [_ZERO] * n
    for i, a in enumerate(p):
        out[i] = a
    for i, b in enumerate(q):
        out[i] -= b
    return _poly_trim(out)


def euler_phi(n):
    out = n
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            out -= out // d
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out -= out // m
    return out


_CYCLO_POLY_CACHE = {}


def cyclotomic_polynomial(n):
    """Monic coefficient list (low degree first) of Phi_n over Q."""
    if n in _CYCLO_POLY_CACHE:
        return _CYCLO_POLY_CACHE[n]
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n
    num = [_ZERO] * (n + 1)
    num[0] = Fraction(-1)
    num[n] = _ONE
    den = [_ONE]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    quo, rem = _poly_divmod(num, den)
    if rem:
        raise ArithmeticError(f"cyclotomic division left a remainder for n={n}")
    _CYCLO_POLY_CACHE[n] = quo
    return quo


class _OrderData:
    """Cached reduction data for one cyclotomic order."""

    __slots__ = ("order", "phi", "poly", "red")

    def __init__(self, order):
        self.order = order
        poly = cyclotomic_polynomial(order)
        self.poly = poly
        self.phi = len(poly) - 1
        # red[k-phi] = coefficients of x^k mod Phi_N; covers plain powers
        # (k < order) and products of reduced elements (k <= 2*phi-2)
        phi = self.phi
        top_power = max(2 * phi - 2, order - 1)
        red = []
        cur = [-c for c in poly[:phi]]  # x^phi mod Phi
        red.append(tuple(cur))
        for _ in range(phi, top_power):
            nxt = [_ZERO] * phi
            top = cur[phi - 1]
            for i in range(phi - 1):
                nxt[i + 1] = cur[i]
            if top:
                for i in range(phi):
                    nxt[i] += top * red[0][i]
            red.append(tuple(nxt))
            cur = nxt
        self.red = red


_ORDER_CACHE = {}


def _order_data(n):
    data = _ORDER_CACHE.get(n)
    if data is None:
        data = _OrderData(n)
        _ORDER_CACHE[n] = data
    return data


def _reduce_mod(coeffs, data):
    """Reduce a coefficient list of length <= 2*phi-1 mod Phi_N."""
    phi = data.phi
    out = list(coeffs[:phi]) + [_ZERO] * (phi - min(len(coeffs), phi))
    for k in range(phi, len(coeffs)):
        c = coeffs[k]
        if c:
            row = data.red[k - phi]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


_PROMOTION_CACHE = {}


def _promotion_rows(m, n):
    """Rows expressing the power basis of Q(zeta_m) inside Q(zeta_n), m | n."""
    key = (m, n)
    rows = _PROMOTION_CACHE.get(key)
    if rows is not None:
        return rows
    data = _order_data(n)
    step = n // m
    phi_m = _order_data(m).phi
    rows = []
    cur = [_ONE]  # x^0
    power = 0
    for i in range(phi_m):
        want = i * step
        while power < want:
            cur = [_ZERO] + cur
            if len(cur) > data.phi:
                cur = list(_reduce_mod(cur, data))
            power += 1
        rows.append(tuple(cur + [_ZERO] * (data.phi - len(cur))))
    _PROMOTION_CACHE[key] = rows
    return rows


class Cyclo:
    """One exact element of Q(zeta_order)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        self.order = order
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------------

    @staticmethod
    def rational(value):
        return Cyclo(1, (Fraction(value),))

    @staticmethod
    def zero():
        return _CYCLO_ZERO

    @staticmethod
    def one():
        return _CYCLO_ONE

    @staticmethod
    def zeta(order, power=1):
        """zeta_order^power, canonically reduced; instances are interned."""
        if order < 1:
            raise ValueError("order must be positive")
        power %= order
        if order == 1 or power == 0:
            return _CYCLO_ONE
        cached = _ZETA_CACHE.get((order, power))
        if cached is not None:
            return cached
        data = _order_data(order)
        mono = [_ZERO] * (power + 1)
        mono[power] = _ONE
        out = Cyclo(order, _reduce_mod(mono, data))
        _ZETA_CACHE[(order, power)] = out
        return out

    # -- coercion / promotion ----------------------------------------------

    @staticmethod
    def coerce(value):
        if isinstance(value, Cyclo):
            return value
        if isinstance(value, (int, Fraction)):
            return Cyclo(1, (Fraction(value),))
        raise TypeError(f"cannot coerce {value!r} to a cyclotomic scalar")

    def promote(self, order):
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("promotion target must be a multiple of the order")
        if self.order == 1:
            data = _order_data(order)
            out = [_ZERO] * data.phi
            out[0] = self.coeffs[0]
            return Cyclo(order, tuple(out))
        rows = _promotion_rows(self.order, order)
        phi_n = len(rows[0])
        out = [_ZERO] * phi_n
        for c, row in zip(self.coeffs, rows):
            if c:
                for i in range(phi_n):
                    if row[i]:
                        out[i] += c * row[i]
        return Cyclo(order, tuple(out))

    def _common(self, other):
        a, b = self, other
        if a.order == b.order:
            return a, b
        n = a.order * b.order // gcd(a.order, b.order)
        return a.promote(n), b.promote(n)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        for c in self.coeffs:
            if c:
                return False
        return True

    def is_one(self):
        if self.coeffs[0] != 1:
            return False
        for c in self.coeffs[1:]:
            if c:
                return False
        return True

    def is_rational(self):
        for c in self.coeffs[1:]:
            if c:
                return False
        return True

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = Cyclo.coerce(other)
        if self.order != other.order:
            if other.order == 1:
                c = list(self.coeffs)
                c[0] += other.coeffs[0]
                return Cyclo(self.order, tuple(c))
            if self.order == 1:
                c = list(other.coeffs)
                c[0] += self.coeffs[0]
                return Cyclo(other.order, tuple(c))
            self, other = self._common(other)
        return Cyclo(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-Cyclo.coerce(other))

    def __rsub__(self, other):
        return Cyclo.coerce(other) - self

    def __mul__(self, other):
        if other is _CYCLO_ONE:
            return self
        if self is _CYCLO_ONE:
            return other
        if other is _CYCLO_MINUS_ONE:
            return self.__neg__()
        if self is _CYCLO_MINUS_ONE:
            return other.__neg__()
        other = Cyclo.coerce(other)
        if self.order != other.order:
            if other.order == 1:
                q = other.coeffs[0]
                if q == 1:
                    return self
                return Cyclo(self.order, tuple(a * q for a in self.coeffs))
            if self.order == 1:
                q = self.coeffs[0]
                if q == 1:
                    return other
                return Cyclo(other.order, tuple(a * q for a in other.coeffs))
            self, other = self._common(other)
        a, b = self.coeffs, other.coeffs
        n = len(a)
        if n == 1:
            return Cyclo(self.order, (a[0] * b[0],))
        prod = [_ZERO] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return Cyclo(self.order, _reduce_mod(prod, _order_data(self.order)))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZeroScalar("inverse of zero")
        if len(self.coeffs) == 1:
            return Cyclo(self.order, (1 / self.coeffs[0],))
        data = _order_data(self.order)
        g, u, _ = _poly_egcd(list(self.coeffs), list(data.poly))
        if len(g) != 1:
            raise ArithmeticError("cyclotomic polynomial must be irreducible over Q")
        inv = [c / g[0] for c in u]
        return Cyclo(self.order, _reduce_mod(inv, data))

    def __truediv__(self, other):
        other = Cyclo.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclo.coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = _CYCLO_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        """Complex conjugation zeta -> zeta^(-1)."""
        n = self.order
        if n <= 2:
            return self
        out = Cyclo(n, tuple([_ZERO] * _order_data(n).phi))
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + Cyclo.zeta(n, (-i) % n) * c
        return out

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo.coerce(other)
        elif not isinstance(other, Cyclo):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __repr__(self):
        if self.is_rational():
            return f"Cyclo({self.coeffs[0]})"
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"Cyclo(z{self.order}; [{terms}])"

    # -- JSON encoding --------------------------------------------------------

    def to_json(self):
        return {"order": self.order, "coeffs": [_frac_str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj):
        order = int(obj["order"])
        coeffs = tuple(Fraction(s) for s in obj["coeffs"])
        if len(coeffs) != _order_data(order).phi:
            raise ValueError("coefficient list length must equal phi(order)")
        return Cyclo(order, coeffs)


def _frac_str(c):
    return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)


_CYCLO_ZERO = Cyclo(1, (_ZERO,))
_CYCLO_ONE = Cyclo(1, (_ONE,))
_CYCLO_MINUS_ONE = Cyclo(2, (Fraction(-1),))
_ZETA_CACHE = {(2, 1): _CYCLO_MINUS_ONE}

ZERO = _CYCLO_ZERO
ONE = _CYCLO_ONE


def scalar_arith(a, b, op):
    """Field arithmetic dispatch used by the CLI and the JSON layer."""
    a, b = Cyclo.coerce(a), Cyclo.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZeroScalar("division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")
