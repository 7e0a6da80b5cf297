"""Exact scalar arithmetic: cyclotomic rationals extended by formal parameters.

A scalar is a finite sum ``sum_e c_e * t^e`` where ``e`` runs over integer
exponent vectors (one slot per formal parameter, Laurent exponents) and each
coefficient ``c_e`` lies in the cyclotomic field Q(zeta_N).  Field elements
are coordinate vectors in the power basis ``1, zeta, ..., zeta^{phi(N)-1}``
reduced modulo the N-th cyclotomic polynomial, so representatives are unique
and equality is structural.  No floating point is used anywhere.

The `Unit` class is a fast path for the monomial units ``+-zeta^k * t^e``
that make up the quantum coefficients and the diagonal characters; the
vanishing conditions of the differential compare such units structurally.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

QQ = Fraction


# ---------------------------------------------------------------------------
# integer/rational polynomial helpers (dense, low degree first)
# ---------------------------------------------------------------------------

def _poly_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return tuple(out)


def _poly_divmod(num, den):
    """Exact division with remainder over the rationals."""
    num = [QQ(c) for c in num]
    den = [QQ(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [QQ(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(den):
                num[k + j] -= c * b
    rem = tuple(_poly_trim(tuple(num)))
    return tuple(quot), rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N):
    """Coefficients (low degree first) of the N-th cyclotomic polynomial.

    Computed by exact division: Phi_N = (z^N - 1) / prod_{d | N, d < N} Phi_d.
    """
    if N < 1:
        raise ValueError("N must be a positive integer")
    if N == 1:
        return (-1, 1)
    num = (-1,) + (0,) * (N - 1) + (1,)
    for d in range(1, N):
        if N % d == 0:
            quot, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            if rem:
                raise ArithmeticError("cyclotomic division left a remainder")
            num = quot
    return tuple(int(c) for c in num)


def euler_phi(N):
    count = 0
    for k in range(1, N + 1):
        a, b = k, N
        while b:
            a, b = b, a % b
        if a == 1:
            count += 1
    return count


# ---------------------------------------------------------------------------
# the cyclotomic field Q(zeta_N)
# ---------------------------------------------------------------------------

class CycloField:
    """Q(zeta_N) with canonical representatives modulo Phi_N."""

    __slots__ = ("N", "degree", "modulus", "_zrows", "_unit_table",
                 "zero", "one", "zeta")

    def __init__(self, N):
        if N < 1:
            raise ValueError("N must be a positive integer")
        self.N = N
        self.modulus = cyclotomic_polynomial(N)
        self.degree = len(self.modulus) - 1
        # rows of z^k reduced mod Phi_N, for k = 0 .. max(N-1, 2*degree-2)
        rows = []
        row = [QQ(0)] * self.degree
        row[0] = QQ(1)
        rows.append(tuple(row))
        top = max(N - 1, 2 * self.degree - 2)
        for _ in range(top):
            row = [QQ(0)] + list(rows[-1])
            lead = row.pop()  # coefficient of z^degree
            if lead:
                for i in range(self.degree):
                    row[i] -= lead * self.modulus[i]
            rows.append(tuple(row))
        self._zrows = tuple(rows)
        self.zero = CycloElement(self, (QQ(0),) * self.degree)
        self.one = CycloElement(self, self._zrows[0])
        self.zeta = CycloElement(self, self._zrows[1 % len(self._zrows)]
                                 if N > 1 else self._zrows[0])
        table = {}
        for k in range(N):
            table[self._zrows[k]] = (1, k)
            table[tuple(-c for c in self._zrows[k])] = (-1, k)
        self._unit_table = table

    def element(self, coeffs):
        coeffs = tuple(QQ(c) for c in coeffs)
        if len(coeffs) != self.degree:
            raise ValueError("coefficient vector has wrong length")
        return CycloElement(self, coeffs)

    def from_rational(self, r):
        coeffs = [QQ(0)] * self.degree
        coeffs[0] = QQ(r)
        return CycloElement(self, tuple(coeffs))

    def zeta_power(self, k):
        return CycloElement(self, self._zrows[k % self.N])

    def root_of_unity_exponent(self, elem):
        """(sign, k) with elem == sign * zeta^k, or None."""
        return self._unit_table.get(elem.coeffs)

    def __repr__(self):
        return f"CycloField({self.N})"


class CycloElement:
    """An element of Q(zeta_N), exact and canonical."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (isinstance(other, CycloElement)
                and self.field is other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return CycloElement(self.field, tuple(a + b for a, b in
                                              zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return CycloElement(self.field, tuple(a - b for a, b in
                                              zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CycloElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        f = self.field
        if isinstance(other, (int, Fraction)):
            q = QQ(other)
            return CycloElement(f, tuple(a * q for a in self.coeffs))
        d = f.degree
        out = [QQ(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        low = out[:d]
        for k in range(d, 2 * d - 1):
            c = out[k]
            if c:
                row = f._zrows[k]
                for i in range(d):
                    if row[i]:
                        low[i] += c * row[i]
        return CycloElement(f, tuple(low))

    __rmul__ = __mul__

    def scale(self, r):
        q = QQ(r)
        return CycloElement(self.field, tuple(a * q for a in self.coeffs))

    def inv(self):
        """Multiplicative inverse, by the extended Euclidean algorithm
        against the cyclotomic modulus."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        f = self.field
        r0 = tuple(QQ(c) for c in f.modulus)
        r1 = _poly_trim(self.coeffs)
        s0, s1 = (), (QQ(1),)
        while r1:
            q, r = _poly_divmod(r0, r1)
            qs1 = _poly_mul(q, s1)
            width = max(len(s0), len(qs1))
            s = _poly_trim(tuple((s0[i] if i < len(s0) else QQ(0))
                                 - (qs1[i] if i < len(qs1) else QQ(0))
                                 for i in range(width)))
            r0, r1, s0, s1 = r1, r, s1, s
        # r0 is the gcd, a nonzero constant since Phi_N is irreducible over Q
        if len(r0) != 1:
            raise ArithmeticError("element is a zero divisor; modulus not irreducible?")
        c = r0[0]
        coeffs = [QQ(0)] * f.degree
        for i, a in enumerate(s0):
            coeffs[i] = a / c
        return CycloElement(f, tuple(coeffs))

    def __repr__(self):
        return f"Cyclo{self.coeffs}"


def cyclo_inverse(a):
    return a.inv()


# ---------------------------------------------------------------------------
# monomial units and the scalar ring
# ---------------------------------------------------------------------------

class Unit:
    """A monomial unit  sign * zeta^z * t1^{e1} ... tp^{ep}.

    Quantum coefficients, their products, and the diagonal characters all
    live here; comparing two units is the structural equality behind the
    vanishing conditions.
    """

    __slots__ = ("sign", "z", "mod", "exps")

    def __init__(self, sign, z, mod, exps):
        # canonical form: for even N the sign folds into the zeta power,
        # so structural equality of units is equality in Q(zeta_N)
        if sign == -1 and mod % 2 == 0:
            z += mod // 2
            sign = 1
        self.sign = sign
        self.z = z % mod
        self.mod = mod
        self.exps = exps

    def __mul__(self, other):
        if self.mod != other.mod or len(self.exps) != len(other.exps):
            raise ValueError("mismatched scalar universes")
        return Unit(self.sign * other.sign, self.z + other.z, self.mod,
                    tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __pow__(self, e):
        return Unit(self.sign if e % 2 else 1, self.z * e, self.mod,
                    tuple(a * e for a in self.exps))

    def inv(self):
        return self ** -1

    def __neg__(self):
        return Unit(-self.sign, self.z, self.mod, self.exps)

    def __eq__(self, other):
        return (isinstance(other, Unit) and self.sign == other.sign
                and self.z == other.z and self.mod == other.mod
                and self.exps == other.exps)

    def __hash__(self):
        return hash((self.sign, self.z, self.mod, self.exps))

    def is_one(self):
        return self.sign == 1 and self.z == 0 and not any(self.exps)

    def __repr__(self):
        return f"Unit({self.sign},z^{self.z},{self.exps})"


class Universe:
    """Shared context: the cyclotomic field plus the formal parameter slots."""

    __slots__ = ("field", "nparams", "param_names", "zero", "one", "unit_one")

    def __init__(self, field, param_names=()):
        self.field = field
        self.param_names = tuple(param_names)
        self.nparams = len(self.param_names)
        self.zero = Scalar(self, {})
        e0 = (0,) * self.nparams
        self.one = Scalar(self, {e0: field.one})
        self.unit_one = Unit(1, 0, field.N, e0)

    def compatible(self, other):
        return (self.field.N == other.field.N
                and self.param_names == other.param_names)

    def unit(self, sign=1, zeta=0, exps=None):
        if exps is None:
            exps = (0,) * self.nparams
        return Unit(sign, zeta, self.field.N, tuple(exps))

    def param_unit(self, index):
        exps = [0] * self.nparams
        exps[index] = 1
        return Unit(1, 0, self.field.N, tuple(exps))

    def from_unit(self, u):
        c = self.field.zeta_power(u.z)
        if u.sign < 0:
            c = -c
        return Scalar(self, {u.exps: c})

    def from_cyclo(self, c):
        if c.is_zero():
            return self.zero
        return Scalar(self, {(0,) * self.nparams: c})

    def from_rational(self, r):
        return self.from_cyclo(self.field.from_rational(r))

    def monomial(self, coeff, exps):
        if coeff.is_zero():
            return self.zero
        return Scalar(self, {tuple(exps): coeff})


class Scalar:
    """Sparse Laurent polynomial over Q(zeta_N) in the formal parameters."""

    __slots__ = ("uni", "terms")

    def __init__(self, uni, terms):
        self.uni = uni
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.uni is not other.uni and not self.uni.compatible(other.uni):
            raise ValueError("mismatched scalar universes")

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.uni.from_rational(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((e, c.coeffs) for e, c in self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.uni.from_rational(other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return Scalar(self.uni, out)

    def __neg__(self):
        return Scalar(self.uni, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.uni.from_rational(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.uni.zero
            return Scalar(self.uni, {e: c.scale(other)
                                     for e, c in self.terms.items()})
        if isinstance(other, CycloElement):
            other = self.uni.from_cyclo(other)
        if isinstance(other, Unit):
            other = self.uni.from_unit(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    if not c.is_zero():
                        out[e] = c
                else:
                    s = s + c
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
        return Scalar(self.uni, out)

    __rmul__ = __mul__

    def constant(self):
        """The CycloElement equal to this scalar, or None if any formal
        parameter occurs."""
        if not self.terms:
            return self.uni.field.zero
        if len(self.terms) == 1:
            (exps, c), = self.terms.items()
            if not any(exps):
                return c
        return None

    def as_unit(self):
        """The Unit equal to this scalar, or None if it is not a monomial
        with a +-zeta^k coefficient."""
        if len(self.terms) != 1:
            return None
        (exps, c), = self.terms.items()
        hit = self.uni.field.root_of_unity_exponent(c)
        if hit is None:
            return None
        sign, k = hit
        return Unit(sign, k, self.uni.field.N, exps)

    def __pow__(self, e):
        u = self.as_unit()
        if u is None:
            raise ValueError("scalar_pow requires a monomial unit")
        return self.uni.from_unit(u ** e)

    def substitute(self, values):
        """Exact evaluation with each formal parameter set to a nonzero
        rational; returns a CycloElement."""
        values = [QQ(v) for v in values]
        if len(values) != self.uni.nparams:
            raise ValueError("assignment has wrong length")
        if any(v == 0 for v in values):
            raise ValueError("parameters are units; zero assignment rejected")
        total = self.uni.field.zero
        for exps, c in self.terms.items():
            factor = QQ(1)
            for v, e in zip(values, exps):
                factor *= v ** e
            total = total + c.scale(factor)
        return total

    def __repr__(self):
        return f"Scalar({scalar_str(self)})"


def scalar_pow(a, e):
    return a ** e


def scalar_str(s, param_names=None):
    """Compact human-readable rendering, e.g. ``-q^2*z + (1/2)``."""
    if s.is_zero():
        return "0"
    names = param_names or s.uni.param_names
    parts = []
    for exps in sorted(s.terms):
        c = s.terms[exps]
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        coeff = _cyclo_str(c)
        if factors and coeff == "1":
            text = "*".join(factors)
        elif factors and coeff == "-1":
            text = "-" + "*".join(factors)
        elif factors:
            text = coeff + "*" + "*".join(factors)
        else:
            text = coeff
        parts.append(text)
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _cyclo_str(c):
    parts = []
    for k, a in enumerate(c.coeffs):
        if a == 0:
            continue
        if k == 0:
            parts.append(str(a))
        else:
            z = "z" if k == 1 else f"z^{k}"
            if a == 1:
                parts.append(z)
            elif a == -1:
                parts.append("-" + z)
            else:
                parts.append(f"{a}*{z}")
    if not parts:
        return "0"
    text = parts[0]
    for p in parts[1:]:
        text += p if p.startswith("-") else "+" + p
    if len(parts) > 1 or (text.startswith("-") and "+" in text):
        return "(" + text + ")"
    if "/" in text or (len(parts) == 1 and "+" in text):
        return "(" + text + ")"
    return text


class Frac:
    """Quotient of two scalars, for the few places that divide by a
    non-monomial (the contracting homotopy and exact linear solves).

    No gcd reduction is attempted: the Laurent ring is an integral domain,
    so cross-multiplication decides equality, and a monomial denominator is
    absorbed into the numerator outright.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = num.uni.one
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        u = den.as_unit()
        if u is not None and not u.is_one():
            num = num * u.inv()
            den = num.uni.one
        if num.is_zero():
            den = num.uni.one
        self.num = num
        self.den = den

    @staticmethod
    def of(x, uni=None):
        if isinstance(x, Frac):
            return x
        if isinstance(x, Scalar):
            return Frac(x)
        if isinstance(x, Unit):
            if uni is None:
                raise ValueError("universe required to coerce a unit")
            return Frac(uni.from_unit(x))
        if isinstance(x, CycloElement):
            if uni is None:
                raise ValueError("universe required to coerce a field element")
            return Frac(uni.from_cyclo(x))
        if isinstance(x, (int, Fraction)):
            if uni is None:
                raise ValueError("universe required to coerce a rational")
            return Frac(uni.from_rational(x))
        raise TypeError(f"cannot coerce {type(x)!r} to Frac")

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = Frac.of(other, self.num.uni)
        if self.den == other.den:
            return Frac(self.num + other.num, self.den)
        return Frac(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Frac(-self.num, self.den)

    def __sub__(self, other):
        return self + (-Frac.of(other, self.num.uni))

    def __rsub__(self, other):
        return Frac.of(other, self.num.uni) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Frac(self.num * other, self.den)
        other = Frac.of(other, self.num.uni)
        return Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return Frac(self.den, self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = Frac.of(other, self.num.uni)
        if not isinstance(other, Frac):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("Frac is unhashable (no canonical form)")

    def __repr__(self):
        if self.den == self.num.uni.one:
            return f"Frac({scalar_str(self.num)})"
        return f"Frac(({scalar_str(self.num)})/({scalar_str(self.den)}))"
