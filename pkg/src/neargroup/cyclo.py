"""Exact arithmetic in the cyclotomic field Q(zeta_M).

An element is a dense vector of rationals: the coefficients of a
polynomial in zeta_M, reduced modulo the M-th cyclotomic polynomial
Phi_M.  The vector length is deg(Phi_M), which for a power-of-two
conductor is M/2 (Phi_M = x^{M/2} + 1, so reduction is negacyclic).
Conductors must be even; then the roots of unity contained in the field
are exactly zeta_M^0 .. zeta_M^{M-1}, which makes root-of-unity
detection a finite table lookup.

No floating point is used anywhere; coefficients are fractions.Fraction.
Values are immutable and hashable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

F0 = Fraction(0)
F1 = Fraction(1)


class ConductorMismatch(ValueError):
    """Arithmetic between elements of different cyclotomic fields."""


class NotAnEvenPowerRoot(ValueError):
    """Radicand is not a root of unity with even canonical exponent."""


def validate_conductor(m: int) -> int:
    if not isinstance(m, int) or m < 2 or m % 2:
        raise ValueError(f"conductor must be an even integer >= 2, got {m!r}")
    return m


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # exact division of integer polynomials, monic divisor; low-to-high coeffs
    num = list(num)
    dden = len(den) - 1
    q = [0] * max(len(num) - dden, 1)
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i]
        if c:
            q[i - dden] = c
            for j, d in enumerate(den):
                num[i - dden + j] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


_cyclo_poly_cache: dict[int, tuple[int, ...]] = {1: (-1, 1)}


def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, low to high, by recursive division of x^m - 1."""
    poly = _cyclo_poly_cache.get(m)
    if poly is not None:
        return poly
    if m >= 4 and m & (m - 1) == 0:
        half = m // 2
        out = [0] * (half + 1)
        out[0] = out[half] = 1
        poly = tuple(out)
    else:
        num = [0] * (m + 1)
        num[0], num[m] = -1, 1
        for d in range(1, m):
            if m % d == 0:
                num, rem = _poly_divmod_int(num, list(cyclotomic_polynomial(d)))
                assert all(c == 0 for c in rem)
        poly = tuple(num)
    _cyclo_poly_cache[m] = poly
    return poly


def cyclo_degree(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


# per-conductor tables: reduced powers of zeta up to x^(2*deg-2), and the
# inverse map coeffs -> exponent used for root-of-unity detection
_xpow_cache: dict[int, list[tuple[Fraction, ...]]] = {}
_root_table_cache: dict[int, dict[tuple[Fraction, ...], int]] = {}


def _xpow_table(m: int) -> list[tuple[Fraction, ...]]:
    table = _xpow_cache.get(m)
    if table is not None:
        return table
    deg = cyclo_degree(m)
    phi = cyclotomic_polynomial(m)
    cur = [F0] * deg
    cur[0] = F1
    table = [tuple(cur)]
    for _ in range(2 * deg - 2):
        nxt = [F0] + cur[: deg - 1]
        lead = cur[deg - 1]
        if lead:
            for j in range(deg):
                nxt[j] -= lead * phi[j]
        cur = nxt
        table.append(tuple(cur))
    _xpow_cache[m] = table
    return table


def _root_table(m: int) -> dict[tuple[Fraction, ...], int]:
    table = _root_table_cache.get(m)
    if table is not None:
        return table
    xpow = _xpow_table(m)
    deg = cyclo_degree(m)
    table = {}
    coeffs = xpow[0]
    for e in range(m):
        table.setdefault(coeffs, e)
        # multiply by x and reduce
        if e + 1 < len(xpow):
            coeffs = xpow[e + 1]
        else:
            phi = cyclotomic_polynomial(m)
            lifted = [F0] + list(coeffs)
            lead = lifted.pop()
            if lead:
                for j in range(deg):
                    lifted[j] -= lead * phi[j]
            coeffs = tuple(lifted)
    _root_table_cache[m] = table
    return table


class CycloNum:
    """An element of Q(zeta_M), exact and immutable."""

    __slots__ = ("conductor", "coeffs", "_nz", "_hash")

    def __init__(self, conductor: int, coeffs) -> None:
        validate_conductor(conductor)
        deg = cyclo_degree(conductor)
        coeffs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise ValueError(f"need {deg} coefficients for conductor {conductor}, got {len(coeffs)}")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_nz", None)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, conductor: int, coeffs: tuple) -> CycloNum:
        self = object.__new__(cls)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_nz", None)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("CycloNum is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, conductor: int) -> CycloNum:
        return cls(conductor, [F0] * cyclo_degree(conductor))

    @classmethod
    def one(cls, conductor: int) -> CycloNum:
        return cls.from_rational(conductor, F1)

    @classmethod
    def from_rational(cls, conductor: int, q) -> CycloNum:
        coeffs = [F0] * cyclo_degree(conductor)
        coeffs[0] = Fraction(q)
        return cls(conductor, coeffs)

    @classmethod
    def root(cls, conductor: int, exponent: int) -> CycloNum:
        """The root of unity zeta_conductor^exponent."""
        validate_conductor(conductor)
        e = exponent % conductor
        cached = _root_num_cache.get(conductor)
        if cached is None:
            cached = _root_num_cache[conductor] = {}
        num = cached.get(e)
        if num is None:
            deg = cyclo_degree(conductor)
            if conductor & (conductor - 1) == 0:
                coeffs = [F0] * deg
                if e < deg:
                    coeffs[e] = F1
                else:
                    coeffs[e - deg] = -F1
                num = cls._raw(conductor, tuple(coeffs))
            else:
                for coeffs, exp in _root_table(conductor).items():
                    if exp == e:
                        num = cls._raw(conductor, coeffs)
                        break
            cached[e] = num
        return num

    # -- introspection -------------------------------------------------

    def _nonzero(self):
        nz = self._nz
        if nz is None:
            nz = tuple((i, c) for i, c in enumerate(self.coeffs) if c)
            object.__setattr__(self, "_nz", nz)
        return nz

    def is_zero(self) -> bool:
        return not self._nonzero()

    def is_one(self) -> bool:
        nz = self._nonzero()
        return len(nz) == 1 and nz[0] == (0, F1)

    def is_rational(self) -> bool:
        nz = self._nonzero()
        return len(nz) == 0 or (len(nz) == 1 and nz[0][0] == 0)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.conductor != self.conductor:
                raise ConductorMismatch(
                    f"conductors differ: {self.conductor} vs {other.conductor}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(self.conductor, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloNum._raw(self.conductor,
                             tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloNum._raw(self.conductor,
                             tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CycloNum._raw(self.conductor, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        m = self.conductor
        nza, nzb = self._nonzero(), other._nonzero()
        if not nza or not nzb:
            return CycloNum.zero(m)
        deg = len(self.coeffs)
        pow2 = m & (m - 1) == 0
        if len(nza) == 1 and len(nzb) == 1 and pow2:
            (i, a), (j, b) = nza[0], nzb[0]
            k, c = i + j, a * b
            if k >= deg:
                k, c = k - deg, -c
            coeffs = [F0] * deg
            coeffs[k] = c
            return CycloNum._raw(m, tuple(coeffs))
        acc = [F0] * (2 * deg - 1)
        for i, a in nza:
            for j, b in nzb:
                acc[i + j] += a * b
        if pow2:
            out = acc[:deg]
            for k in range(deg, 2 * deg - 1):
                c = acc[k]
                if c:
                    out[k - deg] -= c
        else:
            xpow = _xpow_table(m)
            out = [F0] * deg
            for k in range(2 * deg - 1):
                c = acc[k]
                if c:
                    base = xpow[k]
                    for idx in range(deg):
                        if base[idx]:
                            out[idx] += c * base[idx]
        return CycloNum._raw(m, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> CycloNum:
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero cyclotomic element")
        nz = self._nonzero()
        if len(nz) == 1 and nz[0][0] == 0:
            return CycloNum.from_rational(self.conductor, 1 / nz[0][1])
        root = as_root_of_unity(self)
        if root is not None:
            return CycloNum.root(self.conductor, -root.exponent)
        m = self.conductor
        phi = [Fraction(c) for c in cyclotomic_polynomial(m)]
        a = list(self.coeffs)
        while len(a) > 1 and not a[-1]:
            a.pop()
        # invariants: r0 = u0*a mod phi, r1 = u1*a mod phi
        r0, r1 = phi, a
        u0, u1 = [F0], [F1]
        while len(r1) > 1 or r1[0]:
            q, r = _poly_divmod_frac(r0, r1)
            u = _poly_sub(u0, _poly_mul(q, u1))
            r0, r1, u0, u1 = r1, r, u1, u
        g = r0
        if len(g) != 1:
            raise ArithmeticError("gcd with Phi_M not constant; element not invertible")
        inv = [c / g[0] for c in u0]
        deg = cyclo_degree(m)
        inv = inv[:deg] + [F0] * max(0, deg - len(inv))
        return CycloNum._raw(m, tuple(inv))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int) -> CycloNum:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloNum.one(self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.conductor == other.conductor and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == CycloNum.from_rational(self.conductor, other)
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.conductor, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"CycloNum({self.conductor}, {self.as_string()})"

    def as_string(self) -> str:
        """Human-readable form: exponent shorthand for roots, else a polynomial."""
        root = as_root_of_unity(self)
        if root is not None:
            if root.exponent == 0:
                return "1"
            return f"z{self.conductor}^{root.exponent}"
        nz = self._nonzero()
        if not nz:
            return "0"
        parts = []
        for i, c in nz:
            term = str(c) if i == 0 else (f"{c}*z^{i}" if c != 1 else f"z^{i}")
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> CycloNum:
        return cls(obj["conductor"], [Fraction(s) for s in obj["coeffs"]])


_root_num_cache: dict[int, dict[int, CycloNum]] = {}


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    while len(den) > 1 and not den[-1]:
        den = den[:-1]
    dden = len(den) - 1
    lead = den[-1]
    q = [F0] * max(len(num) - dden, 1)
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i]
        if c:
            c = c / lead
            q[i - dden] = c
            for j, d in enumerate(den):
                num[i - dden + j] -= c * d
    while len(num) > 1 and not num[-1]:
        num.pop()
    return q, num


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [F0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [F0] * (n - len(a))
    b = b + [F0] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_conductor^exponent with the exponent canonical in [0, conductor)."""

    conductor: int
    exponent: int

    def __post_init__(self):
        validate_conductor(self.conductor)
        object.__setattr__(self, "exponent", self.exponent % self.conductor)

    def value(self) -> CycloNum:
        return CycloNum.root(self.conductor, self.exponent)

    def order(self) -> int:
        return self.conductor // gcd(self.exponent, self.conductor)

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "exp": self.exponent}

    @classmethod
    def from_json(cls, obj: dict) -> RootOfUnity:
        return cls(obj["conductor"], obj["exp"])


def as_root_of_unity(a: CycloNum) -> RootOfUnity | None:
    """The exponent e with a = zeta_M^e, or None if a is not a root of unity."""
    m = a.conductor
    if m & (m - 1) == 0:
        nz = a._nonzero()
        if len(nz) != 1:
            return None
        i, c = nz[0]
        if c == F1:
            return RootOfUnity(m, i)
        if c == -F1:
            return RootOfUnity(m, i + m // 2)
        return None
    e = _root_table(m).get(a.coeffs)
    return None if e is None else RootOfUnity(m, e)


def root_order(a: CycloNum) -> int | None:
    """Least k >= 1 with a^k = 1, or None if a is not a root of unity."""
    root = as_root_of_unity(a)
    return None if root is None else root.order()


def principal_sqrt_even_power(a: CycloNum) -> CycloNum:
    """Principal square root of zeta_M^{2t}: the value zeta_M^t with 0 <= 2t < M.

    Raises NotAnEvenPowerRoot when a is not a root of unity or its canonical
    exponent is odd; such radicands fall outside the guaranteed image.
    """
    root = as_root_of_unity(a)
    if root is None:
        raise NotAnEvenPowerRoot(f"not a root of unity: {a!r}")
    if root.exponent % 2:
        raise NotAnEvenPowerRoot(
            f"canonical exponent {root.exponent} is odd in conductor {root.conductor}")
    return CycloNum.root(a.conductor, root.exponent // 2)


def sqrt_group_order(conductor: int, size: int) -> CycloNum:
    """The positive square root of size = 2^n inside Q(zeta_{8*size}).

    Built as 2^floor(n/2) * (zeta^{M/8} + zeta^{-M/8})^(n mod 2); the second
    factor is sqrt(2) = zeta_8 + zeta_8^{-1}.
    """
    if size < 1 or size & (size - 1):
        raise ValueError(f"group order must be a power of two, got {size}")
    if conductor != 8 * size:
        raise ValueError(f"conductor {conductor} does not equal 8*{size}")
    n = size.bit_length() - 1
    out = CycloNum.from_rational(conductor, 2 ** (n // 2))
    if n % 2:
        e = conductor // 8
        out = out * (CycloNum.root(conductor, e) + CycloNum.root(conductor, -e))
    return out


def conductor_for_group_order(size: int) -> int:
    return validate_conductor(8 * size)
