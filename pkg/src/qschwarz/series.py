"""Truncated Puiseux series in q with exact rational coefficients.

A :class:`PuiseuxSeries` with ramification ``N``, lead ``a`` and coefficient
list ``c`` stands for::

    sum_j c[j] * q**((a + j)/N)  +  O(q**((a + len(c))/N))

:class:`LogSeries` adds a single power of ``L = log q`` on top of that.
The only derivation is ``D = q d/dq`` so that every coefficient stays in Q.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    DivisionByZeroSeries,
    LogTimesLog,
    NonPositiveLead,
    NotMonic,
    ZeroSeries,
)

Rat = Fraction
Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)
_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

# below this length the schoolbook product beats packing into one big integer
_KRONECKER_MIN = 12


def parse_rat(text: str | int | Fraction) -> Fraction:
    """Parse an exact rational ``"p/q"`` or ``"p"``; decimals are rejected."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"not an exact rational: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rat(x: Fraction) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# list-level kernels
# ---------------------------------------------------------------------------

def _pack(values: Sequence[int], nbytes: int) -> int:
    pos = b"".join((v if v > 0 else 0).to_bytes(nbytes, "little") for v in values)
    neg = b"".join((-v if v < 0 else 0).to_bytes(nbytes, "little") for v in values)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _int_convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the integer product ``a*b``."""
    a = a[:n]
    b = b[:n]
    out = [0] * n
    if not a or not b:
        return out
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if ma == 0 or mb == 0:
        return out
    if min(len(a), len(b)) < _KRONECKER_MIN:
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b[: n - i]):
                    if y:
                        out[i + j] += x * y
        return out
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 1
    nbytes = bits // 8 + 1
    c = _pack(a, nbytes) * _pack(b, nbytes)
    # bias every digit by half the base so that signed digits unpack without carries
    half_digit = (1 << (8 * nbytes - 1)).to_bytes(nbytes, "little")
    bias = int.from_bytes(half_digit * n, "little")
    width = 8 * nbytes * n
    d = (c + bias) & ((1 << width) - 1)
    raw = d.to_bytes(nbytes * n, "little")
    half = 1 << (8 * nbytes - 1)
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(n)]


def _common_denominator(values: Sequence[Fraction]) -> int:
    den = 1
    for v in values:
        d = v.denominator
        if d != 1 and den % d:
            den = den * d // math.gcd(den, d)
    return den


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    """First ``n`` coefficients of the product of two rational coefficient lists."""
    a = a[:n]
    b = b[:n]
    da = _common_denominator(a)
    db = _common_denominator(b)
    ia = [v.numerator * (da // v.denominator) for v in a]
    ib = [v.numerator * (db // v.denominator) for v in b]
    prod = _int_convolve(ia, ib, n)
    den = da * db
    if den == 1:
        return [Fraction(v) if v else _ZERO for v in prod]
    return [Fraction(v, den) if v else _ZERO for v in prod]


def _stride(coeffs: Sequence[Fraction]) -> int:
    """gcd of the offsets carrying nonzero coefficients (0 if only offset 0)."""
    g = 0
    for j, v in enumerate(coeffs):
        if v and j:
            g = math.gcd(g, j)
            if g == 1:
                break
    return g


def _spread(coeffs: Sequence[Fraction], factor: int, step: int, length: int) -> list[Fraction]:
    """Re-index offsets ``j -> j*factor/step`` into a list of the given length."""
    if factor == step:
        out = list(coeffs[:length])
        out.extend([_ZERO] * (length - len(out)))
        return out
    out = [_ZERO] * length
    for j, v in enumerate(coeffs):
        if v:
            p = j * factor // step
            if p < length:
                out[p] = v
    return out


def _inverse_list(c: Sequence[Fraction], n: int) -> list[Fraction]:
    """First ``n`` coefficients of ``1/c`` for ``c[0] != 0`` (Newton iteration)."""
    g = _stride(c[:n])
    if g > 1:
        comp = list(c[:n:g])
        inv = _inverse_list(comp, -(-n // g))
        return _spread(inv, g, 1, n)
    x = [1 / Fraction(c[0])]
    p = 1
    while p < n:
        p = min(2 * p, n)
        e = _convolve(c, x, p)
        e = [-v for v in e]
        e[0] += 2
        x = _convolve(x, e, p)
    return x


def _pow_list(m: Sequence[Fraction], alpha: Fraction, n: int) -> list[Fraction]:
    """First ``n`` coefficients of ``m**alpha`` for a list with ``m[0] == 1``.

    Uses ``m * D(y) = alpha * D(m) * y``, which row by row reads
    ``k y_k = sum_j ((alpha + 1) j - k) m_j y_{k-j}``.
    """
    g = _stride(m[:n])
    if g > 1:
        comp = list(m[:n:g])
        return _spread(_pow_list(comp, alpha, -(-n // g)), g, 1, n)
    if n == 0:
        return []
    y = [_ONE] + [_ZERO] * (n - 1)
    if alpha == 0:
        return y
    support = [(j, Fraction(m[j])) for j in range(1, min(len(m), n)) if m[j]]
    a1 = alpha + 1
    for k in range(1, n):
        acc = _ZERO
        for j, mj in support:
            if j > k:
                break
            yk = y[k - j]
            if yk:
                acc += (a1 * j - k) * mj * yk
        y[k] = acc / k
    return y


# ---------------------------------------------------------------------------
# PuiseuxSeries
# ---------------------------------------------------------------------------

class PuiseuxSeries:
    """Immutable truncated series in ``q**(1/ram)`` with rational coefficients."""

    __slots__ = ("ram", "lead", "coeffs")

    def __init__(self, ram: int, lead: int, coeffs: Iterable[Scalar] = ()):
        ram = int(ram)
        if ram < 1:
            raise ValueError("ramification must be a positive integer")
        ram, lead, coeffs = _canonical(ram, int(lead), [Fraction(c) for c in coeffs])
        object.__setattr__(self, "ram", ram)
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("PuiseuxSeries is immutable")

    # -- construction -------------------------------------------------------

    @classmethod
    def _raw(cls, ram: int, lead: int, coeffs: list[Fraction]) -> "PuiseuxSeries":
        obj = object.__new__(cls)
        ram, lead, coeffs = _canonical(ram, lead, coeffs)
        object.__setattr__(obj, "ram", ram)
        object.__setattr__(obj, "lead", lead)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        return obj

    @classmethod
    def from_terms(cls, terms: dict, prec: Scalar) -> "PuiseuxSeries":
        """Build ``sum c*q**e + O(q**prec)`` from an ``{exponent: coeff}`` mapping."""
        prec = Fraction(prec)
        exps = [Fraction(e) for e in terms]
        ram = math.lcm(prec.denominator, *(e.denominator for e in exps)) if exps else prec.denominator
        top = int(prec * ram)
        live = {int(Fraction(e) * ram): Fraction(c) for e, c in terms.items() if Fraction(e) < prec}
        if not live:
            return cls._raw(ram, top, [])
        low = min(live)
        coeffs = [_ZERO] * (top - low)
        for j, c in live.items():
            coeffs[j - low] += c
        return cls._raw(ram, low, coeffs)

    @classmethod
    def constant(cls, c: Scalar, prec: Scalar) -> "PuiseuxSeries":
        return cls.from_terms({0: c}, prec)

    @classmethod
    def monomial(cls, exponent: Scalar, prec: Scalar, coeff: Scalar = 1) -> "PuiseuxSeries":
        return cls.from_terms({Fraction(exponent): coeff}, prec)

    @classmethod
    def zero(cls, prec: Scalar) -> "PuiseuxSeries":
        return cls.from_terms({}, prec)

    # -- inspection ---------------------------------------------------------

    @property
    def known_to(self) -> Fraction:
        return Fraction(self.lead + len(self.coeffs), self.ram)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> Fraction | None:
        """Exponent of the leading nonzero term, or None for the zero series."""
        return None if not self.coeffs else Fraction(self.lead, self.ram)

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ZeroSeries("zero series has no leading coefficient")
        return self.coeffs[0]

    def exponent(self, j: int) -> Fraction:
        return Fraction(self.lead + j, self.ram)

    def coefficient(self, exponent: Scalar) -> Fraction:
        e = Fraction(exponent)
        if e >= self.known_to:
            raise ValueError(f"q^{e} lies beyond the truncation O(q^{self.known_to})")
        pos = e * self.ram
        if pos.denominator != 1:
            return _ZERO
        j = int(pos) - self.lead
        if j < 0:
            return _ZERO
        return self.coeffs[j]

    __getitem__ = coefficient

    def terms(self) -> Iterator[tuple[Fraction, Fraction]]:
        """Nonzero ``(exponent, coefficient)`` pairs in increasing order."""
        for j, c in enumerate(self.coeffs):
            if c:
                yield Fraction(self.lead + j, self.ram), c

    def vanishes_below(self, bound: Scalar) -> bool:
        """True iff the series is certified to be ``O(q**bound)``."""
        bound = Fraction(bound)
        if self.known_to < bound:
            return False
        return self.coeffs == () or Fraction(self.lead, self.ram) >= bound

    def first_nonzero(self) -> Fraction | None:
        return self.valuation

    # -- structural ---------------------------------------------------------

    def rescaled(self, ram: int) -> list[Fraction]:
        """Coefficient list in units of ``q**(1/ram)``; ``ram`` must be a multiple."""
        f, r = divmod(ram, self.ram)
        if r:
            raise ValueError("target ramification must be a multiple")
        out = [_ZERO] * (len(self.coeffs) * f)
        for j, c in enumerate(self.coeffs):
            out[j * f] = c
        return out

    def truncate(self, bound: Scalar) -> "PuiseuxSeries":
        bound = Fraction(bound)
        if bound >= self.known_to:
            return self
        ram = math.lcm(self.ram, bound.denominator)
        f = ram // self.ram
        top = int(bound * ram)
        lead = self.lead * f
        coeffs = self.rescaled(ram)[: max(0, top - lead)]
        if top <= lead:
            return PuiseuxSeries._raw(ram, top, [])
        return PuiseuxSeries._raw(ram, lead, coeffs)

    def shift(self, e: Scalar) -> "PuiseuxSeries":
        """Exact multiplication by ``q**e``."""
        e = Fraction(e)
        ram = math.lcm(self.ram, e.denominator)
        f = ram // self.ram
        return PuiseuxSeries._raw(ram, self.lead * f + int(e * ram), self.rescaled(ram))

    def scale(self, c: Scalar) -> "PuiseuxSeries":
        c = Fraction(c)
        if c == 0:
            return PuiseuxSeries._raw(self.ram, self.lead + len(self.coeffs), [])
        return PuiseuxSeries._raw(self.ram, self.lead, [c * v for v in self.coeffs])

    def normalize(self) -> "PuiseuxSeries":
        return PuiseuxSeries._raw(self.ram, self.lead, list(self.coeffs))

    def d(self) -> "PuiseuxSeries":
        """``D = q d/dq``: ``D(q**e) = e q**e``."""
        n = self.ram
        return PuiseuxSeries._raw(
            n, self.lead,
            [c * Fraction(self.lead + j, n) if c else _ZERO for j, c in enumerate(self.coeffs)],
        )

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return PuiseuxSeries._raw(self.ram, self.lead, [-c for c in self.coeffs])

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxSeries.constant(other, self.known_to)
        elif isinstance(other, LogSeries):
            return LogSeries.lift(self) + other
        elif not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, PuiseuxSeries, LogSeries)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, LogSeries):
            return other * self
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZeroSeries("division by the scalar 0")
            return self.scale(1 / Fraction(other))
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return _div(self, other)

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return _inverse(self).scale(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise TypeError("use pow_rat for non-integer or negative powers")
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return PuiseuxSeries.constant(1, self.known_to - Fraction(self.lead, self.ram))
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxSeries.constant(other, self.known_to)
        if isinstance(other, LogSeries):
            return other == self
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (self - other).vanishes_below(min(self.known_to, other.known_to))

    __hash__ = None

    def __repr__(self):
        return format_series(self)

    def __len__(self):
        return len(self.coeffs)


def _canonical(ram: int, lead: int, coeffs: list[Fraction]):
    start = 0
    n = len(coeffs)
    while start < n and not coeffs[start]:
        start += 1
    if start:
        lead += start
        coeffs = coeffs[start:]
    g = math.gcd(ram, lead, lead + len(coeffs))
    if g > 1:
        for j, c in enumerate(coeffs):
            if c and j % g:
                g = math.gcd(g, j)
                if g == 1:
                    break
    if g > 1:
        return ram // g, lead // g, coeffs[::g]
    return ram, lead, coeffs


def _common(s: PuiseuxSeries, t: PuiseuxSeries):
    ram = s.ram * t.ram // math.gcd(s.ram, t.ram)
    return ram, ram // s.ram, ram // t.ram


def _add(s: PuiseuxSeries, t: PuiseuxSeries) -> PuiseuxSeries:
    ram, fs, ft = _common(s, t)
    top = min((s.lead + len(s.coeffs)) * fs, (t.lead + len(t.coeffs)) * ft)
    lead = min(s.lead * fs, t.lead * ft)
    if top <= lead:
        return PuiseuxSeries._raw(ram, top, [])
    out = [_ZERO] * (top - lead)
    for ser, f in ((s, fs), (t, ft)):
        base = ser.lead * f - lead
        for j, c in enumerate(ser.coeffs):
            if c:
                p = base + j * f
                if p >= len(out):
                    break
                out[p] += c
    return PuiseuxSeries._raw(ram, lead, out)


def _mul(s: PuiseuxSeries, t: PuiseuxSeries) -> PuiseuxSeries:
    ram, fs, ft = _common(s, t)
    lead = s.lead * fs + t.lead * ft
    n = min(len(s.coeffs) * fs, len(t.coeffs) * ft)
    if n <= 0 or s.is_zero or t.is_zero:
        top = min((s.lead + len(s.coeffs)) * fs + t.lead * ft, (t.lead + len(t.coeffs)) * ft + s.lead * fs)
        return PuiseuxSeries._raw(ram, top, [])
    gs = _stride(s.coeffs) * fs
    gt = _stride(t.coeffs) * ft
    g = math.gcd(gs, gt) or n
    m = -(-n // g)
    prod = _convolve(_spread(s.coeffs, fs, g, m), _spread(t.coeffs, ft, g, m), m)
    if g > 1:
        prod = _spread(prod, g, 1, n)
    return PuiseuxSeries._raw(ram, lead, prod[:n])


def _inverse(t: PuiseuxSeries) -> PuiseuxSeries:
    if t.is_zero:
        raise DivisionByZeroSeries("divisor vanishes to its truncation order")
    return PuiseuxSeries._raw(t.ram, -t.lead, _inverse_list(t.coeffs, len(t.coeffs)))


def _div(s: PuiseuxSeries, t: PuiseuxSeries) -> PuiseuxSeries:
    return _mul(s, _inverse(t))


# ---------------------------------------------------------------------------
# LogSeries
# ---------------------------------------------------------------------------

class LogSeries:
    """``log_part * L + pure_part`` with ``L = log q`` (so ``D L = 1``)."""

    __slots__ = ("log_part", "pure_part")

    def __init__(self, log_part: PuiseuxSeries, pure_part: PuiseuxSeries):
        object.__setattr__(self, "log_part", log_part)
        object.__setattr__(self, "pure_part", pure_part)

    def __setattr__(self, name, value):
        raise AttributeError("LogSeries is immutable")

    @classmethod
    def lift(cls, p: PuiseuxSeries) -> "LogSeries":
        return cls(PuiseuxSeries.zero(p.known_to), p)

    @property
    def has_log(self) -> bool:
        return not self.log_part.is_zero

    @property
    def known_to(self) -> Fraction:
        return min(self.log_part.known_to, self.pure_part.known_to)

    @property
    def is_zero(self) -> bool:
        return self.log_part.is_zero and self.pure_part.is_zero

    def to_pure(self) -> PuiseuxSeries:
        if self.has_log:
            raise ValueError("series has a nonzero log part")
        return self.pure_part

    def vanishes_below(self, bound: Scalar) -> bool:
        return self.log_part.vanishes_below(bound) and self.pure_part.vanishes_below(bound)

    def d(self) -> "LogSeries":
        return LogSeries(self.log_part.d(), self.log_part + self.pure_part.d())

    def __neg__(self):
        return LogSeries(-self.log_part, -self.pure_part)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, PuiseuxSeries)):
            return LogSeries(self.log_part, self.pure_part + other)
        if not isinstance(other, LogSeries):
            return NotImplemented
        return LogSeries(self.log_part + other.log_part, self.pure_part + other.pure_part)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, PuiseuxSeries, LogSeries)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PuiseuxSeries)):
            return LogSeries(self.log_part * other, self.pure_part * other)
        if not isinstance(other, LogSeries):
            return NotImplemented
        if self.has_log and other.has_log:
            raise LogTimesLog("L**2 is outside the representable space")
        if not other.has_log:
            return self * other.pure_part
        return other * self.pure_part

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PuiseuxSeries)):
            other = LogSeries.lift(other if isinstance(other, PuiseuxSeries)
                                   else PuiseuxSeries.constant(other, self.known_to))
        if not isinstance(other, LogSeries):
            return NotImplemented
        return self.log_part == other.log_part and self.pure_part == other.pure_part

    __hash__ = None

    def __repr__(self):
        return f"({format_series(self.log_part)})*L + ({format_series(self.pure_part)})"


AnySeries = Union[PuiseuxSeries, LogSeries]


# ---------------------------------------------------------------------------
# functional API
# ---------------------------------------------------------------------------

def add(s, t):
    return s + t


def mul(s, t):
    return s * t


def div(s: PuiseuxSeries, t: PuiseuxSeries) -> PuiseuxSeries:
    return _div(s, t)


def d_op(s):
    return s.d()


def normalize(s: PuiseuxSeries) -> PuiseuxSeries:
    return s.normalize()


def monicize(s: PuiseuxSeries) -> tuple[Fraction, Fraction, PuiseuxSeries]:
    """Split ``s = c * q**e * m`` with ``m = 1 + O(q**(1/N))``."""
    if s.is_zero:
        raise ZeroSeries("cannot monicize the zero series")
    c = s.coeffs[0]
    inv = 1 / c
    m = PuiseuxSeries._raw(s.ram, 0, [v * inv for v in s.coeffs])
    return c, Fraction(s.lead, s.ram), m


def pow_rat(m: PuiseuxSeries, alpha: Scalar) -> PuiseuxSeries:
    """``m**alpha`` for a monic series via the binomial series."""
    alpha = Fraction(alpha)
    if m.is_zero or m.lead != 0 or m.coeffs[0] != 1:
        raise NotMonic("pow_rat needs a series of the form 1 + O(q**(1/N))")
    return PuiseuxSeries._raw(m.ram, 0, _pow_list(m.coeffs, alpha, len(m.coeffs)))


def _horner(poly: Sequence[Scalar], s: PuiseuxSeries) -> PuiseuxSeries:
    coeffs = [Fraction(c) for c in poly]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return PuiseuxSeries.zero(s.known_to)
    acc = PuiseuxSeries.constant(coeffs[-1], s.known_to)
    for c in reversed(coeffs[:-1]):
        acc = acc * s + c
    return acc


def compose_rational(P: Sequence[Scalar], Q: Sequence[Scalar], s: PuiseuxSeries) -> PuiseuxSeries:
    """Evaluate ``P(s)/Q(s)``; ``P`` and ``Q`` are coefficient lists, constant term first."""
    if s.is_zero or s.lead <= 0:
        raise NonPositiveLead("compose_rational needs a series with positive leading exponent")
    num = _horner(P, s)
    den = _horner(Q, s)
    return _div(num, den)


# ---------------------------------------------------------------------------
# rendering and JSON
# ---------------------------------------------------------------------------

def _fmt_power(e: Fraction, var: str) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    if e.denominator == 1:
        return f"{var}^{e.numerator}"
    return f"{var}^({e})"


def format_series(s: PuiseuxSeries, var: str = "q") -> str:
    """Render as e.g. ``1 + 240q + 2160q^2 + O(q^3)``."""
    parts: list[str] = []
    for e, c in s.terms():
        neg = c < 0
        a = -c if neg else c
        power = _fmt_power(e, var)
        if not power:
            body = str(a)
        elif a == 1:
            body = power
        elif a.denominator == 1:
            body = f"{a}{power}"
        else:
            body = f"({a}){power}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    big_o = f"O({_fmt_power(s.known_to, var) or '1'})"
    parts.append(("+ " if parts else "") + big_o)
    return " ".join(parts)


_TERM_RE = re.compile(
    r"^(?P<coef>\d+/\d+|\d+|\(\d+/\d+\))?(?P<var>q(?:\^(?:(?P<int>-?\d+)|\((?P<frac>-?\d+/\d+)\)))?)?$"
)


def parse_series_text(text: str, var: str = "q") -> PuiseuxSeries:
    """Inverse of :func:`format_series` for variable ``q``."""
    tokens = text.split()
    body, _, tail = " ".join(tokens).rpartition("O(")
    if not tail.endswith(")"):
        raise ValueError("missing O(...) term")
    prec_txt = tail[:-1]
    prec = Fraction(0) if prec_txt == "1" else _parse_power(prec_txt)
    terms: dict[Fraction, Fraction] = {}
    sign = 1
    for tok in body.split():
        if tok in "+-":
            sign = -1 if tok == "-" else 1
            continue
        if tok.startswith("-"):
            sign, tok = -1, tok[1:]
        m = _TERM_RE.match(tok)
        if m is None:
            raise ValueError(f"bad term {tok!r}")
        coef = Fraction(1) if m.group("coef") is None else Fraction(m.group("coef").strip("()"))
        if m.group("var") is None:
            e = Fraction(0)
        else:
            e = _parse_power(m.group("var"))
        terms[e] = sign * coef
        sign = 1
    return PuiseuxSeries.from_terms(terms, prec)


def _parse_power(txt: str) -> Fraction:
    if txt == "q":
        return Fraction(1)
    if not txt.startswith("q^"):
        raise ValueError(f"bad power {txt!r}")
    return Fraction(txt[2:].strip("()"))


def series_to_dict(s: AnySeries) -> dict:
    if isinstance(s, LogSeries):
        return {"log_part": series_to_dict(s.log_part), "pure_part": series_to_dict(s.pure_part)}
    return {"ram": s.ram, "lead": s.lead, "coeffs": [format_rat(c) for c in s.coeffs]}


def series_from_dict(d: dict) -> AnySeries:
    if "log_part" in d:
        return LogSeries(series_from_dict(d["log_part"]), series_from_dict(d["pure_part"]))
    return PuiseuxSeries(int(d["ram"]), int(d["lead"]), [parse_rat(c) for c in d["coeffs"]])


def q(prec: Scalar = 20) -> PuiseuxSeries:
    """The series ``q + O(q**prec)``."""
    return PuiseuxSeries.monomial(1, prec)
