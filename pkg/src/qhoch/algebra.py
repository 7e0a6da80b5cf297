"""The quantum exterior algebra, a finite group acting diagonally, and the
skew group algebra.

The algebra has generators x_1 < ... < x_n with x_i^2 = 0 and
x_i x_j = -q_{ij} x_j x_i for i < j, where each q_{ij} is a monomial unit
(a root of unity times a formal-parameter monomial).  Monomials are kept in
the normal form x_1^{a_1}...x_n^{a_n}, a in {0,1}^n; every reordering
coefficient derives from the single defining relation.

A group element g scales each generator: g.x_i = chi_{g,i} x_i with
chi_{g,i} a root of unity.  The skew product on Lambda x kG is
(a (x) g)(b (x) h) = a * (g.b) (x) gh.
"""

from __future__ import annotations

from .scalars import CycloField, Scalar, Unit, Universe


class Group:
    """Finite group with explicit multiplication table and diagonal
    characters chi[g][i] (stored as monomial units of the ambient universe).

    Element 0 is the identity.
    """

    __slots__ = ("order", "mult", "inverse", "chi")

    def __init__(self, mult, chi, validate=True):
        self.mult = tuple(tuple(row) for row in mult)
        self.order = len(self.mult)
        self.chi = tuple(tuple(row) for row in chi)
        inv = [None] * self.order
        for g in range(self.order):
            for h in range(self.order):
                if self.mult[g][h] == 0:
                    inv[g] = h
        self.inverse = tuple(inv)
        if validate:
            self._validate()

    def _validate(self):
        n = self.order
        rng = range(n)
        for g in rng:
            if self.mult[0][g] != g or self.mult[g][0] != g:
                raise ValueError("element 0 is not an identity")
            if self.inverse[g] is None:
                raise ValueError(f"element {g} has no inverse")
        for g in rng:
            for h in rng:
                for k in rng:
                    if self.mult[self.mult[g][h]][k] != self.mult[g][self.mult[h][k]]:
                        raise ValueError("multiplication table is not associative")
        ngen = len(self.chi[0]) if self.chi else 0
        for i in range(ngen):
            if not self.chi[0][i].is_one():
                raise ValueError("identity character is not 1")
            for g in rng:
                u = self.chi[g][i]
                if any(u.exps):
                    raise ValueError("characters must be constants, not formal")
                if not (u ** u.mod).is_one():
                    # a sign that survives means chi^N != 1: N too small
                    raise ValueError(
                        "character order does not divide the cyclotomic order N")
                for h in rng:
                    if self.chi[self.mult[g][h]][i] != u * self.chi[h][i]:
                        raise ValueError("chi is not a homomorphism in column %d" % i)

    def conjugate(self, h, g):
        """h g h^{-1}."""
        return self.mult[self.mult[h][g]][self.inverse[h]]


def trivial_group(uni, n):
    return Group(((0,),), ((uni.unit_one,) * n,), validate=False)


def make_cyclic_group(uni, n, order, chi_gen):
    """Cyclic group of the given order with generator characters chi_gen
    (one Unit per algebra generator)."""
    chi_gen = tuple(chi_gen)
    if len(chi_gen) != n:
        raise ValueError("need one character value per generator")
    for u in chi_gen:
        if any(u.exps):
            raise ValueError("characters must be constants")
        if not (u ** order).is_one():
            raise ValueError("character order does not divide the group order")
    mult = [[(a + b) % order for b in range(order)] for a in range(order)]
    chi = [tuple(u ** a for u in chi_gen) for a in range(order)]
    return Group(mult, chi, validate=True)


class Algebra:
    """Bundle of the quantum datum, the group datum, and the scalar universe.

    q[i][j] is the full matrix of units with q[i][i] = -1 and
    q[j][i] = q[i][j]^{-1}; nq[i][j] = -q[i][j] (so nq[i][i] = 1).
    Indices are 0-based throughout the code.
    """

    __slots__ = ("n", "uni", "q", "nq", "group", "caches")

    def __init__(self, n, uni, q_upper, group=None):
        self.n = n
        self.uni = uni
        minus_one = uni.unit(sign=-1)
        q = [[None] * n for _ in range(n)]
        for i in range(n):
            q[i][i] = minus_one
        for (i, j), u in q_upper.items():
            if not 0 <= i < j < n:
                raise ValueError("quantum entries must be given for i < j only")
            q[i][j] = u
            q[j][i] = u.inv()
        for i in range(n):
            for j in range(n):
                if q[i][j] is None:
                    raise ValueError(f"missing quantum entry ({i},{j})")
        self.q = tuple(tuple(row) for row in q)
        self.nq = tuple(tuple(-u for u in row) for row in self.q)
        self.group = group if group is not None else trivial_group(uni, n)
        if len(self.group.chi[0]) != n:
            raise ValueError("character matrix width must equal n")
        self.caches = {}

    # -- scalar conveniences -------------------------------------------------

    def unit_one(self):
        return self.uni.unit_one

    def scalar(self, u):
        return self.uni.from_unit(u)

    def one(self):
        return self.uni.one

    def zero(self):
        return self.uni.zero

    def chi(self, g, i):
        return self.group.chi[g][i]

    def chi_prod(self, g, exps):
        """prod_i chi_{g,i}^{exps_i} as a Unit."""
        u = self.uni.unit_one
        for i, e in enumerate(exps):
            if e:
                u = u * (self.group.chi[g][i] ** e)
        return u

    # -- monomial arithmetic -------------------------------------------------

    def mono_mul(self, a, b):
        """Normal form of x^a * x^b: None if a slot repeats, else
        (coefficient unit, a | b)."""
        coeff = self.uni.unit_one
        for i in range(self.n):
            if a[i] and b[i]:
                return None
        for k in range(self.n):
            if b[k]:
                for l in range(k + 1, self.n):
                    if a[l]:
                        # x_l x_k = (-q_{kl})^{-1} x_k x_l for k < l
                        coeff = coeff * self.nq[k][l].inv()
        return coeff, tuple(ai | bi for ai, bi in zip(a, b))

    def act(self, g, mono):
        """Character of g on the monomial x^mono."""
        return self.chi_prod(g, mono)


class SkewElement:
    """Element of the skew group algebra in normal form: a sparse map
    (monomial, group element) -> Scalar."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms = {} if terms is None else terms

    @staticmethod
    def basis(alg, mono, g, coeff=None):
        c = coeff if coeff is not None else alg.one()
        if c.is_zero():
            return SkewElement(alg, {})
        return SkewElement(alg, {(tuple(mono), g): c})

    @staticmethod
    def one(alg):
        return SkewElement.basis(alg, (0,) * alg.n, 0)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, SkewElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return SkewElement(self.alg, out)

    def __neg__(self):
        return SkewElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, Unit):
            c = self.alg.scalar(c)
        out = {}
        for k, s in self.terms.items():
            v = s * c
            if not v.is_zero():
                out[k] = v
        return SkewElement(self.alg, out)

    def __mul__(self, other):
        """(a (x) g)(b (x) h) = a * (g.b) (x) gh with x_i^2 = 0."""
        alg = self.alg
        out = {}
        for (a, g), c1 in self.terms.items():
            for (b, h), c2 in other.terms.items():
                hit = alg.mono_mul(a, b)
                if hit is None:
                    continue
                u, mono = hit
                u = u * alg.act(g, b)
                key = (mono, alg.group.mult[g][h])
                c = c1 * c2 * u
                s = out.get(key)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return SkewElement(alg, out)

    def __repr__(self):
        from .scalars import scalar_str
        if not self.terms:
            return "SkewElement(0)"
        bits = []
        for (mono, g), c in sorted(self.terms.items()):
            word = "".join(f"x{i+1}" for i, a in enumerate(mono) if a) or "1"
            bits.append(f"({scalar_str(c)})*{word}(x)g{g}")
        return "SkewElement(" + " + ".join(bits) + ")"


def group_act(alg, g, elem):
    """Diagonal action of g on the Lambda part of a skew element."""
    out = {}
    for (mono, h), c in elem.terms.items():
        v = c * alg.act(g, mono)
        if not v.is_zero():
            out[(mono, h)] = v
    return SkewElement(alg, out)


# ---------------------------------------------------------------------------
# constructors for the standard setups
# ---------------------------------------------------------------------------

def build_algebra(n, N=1, q_spec=None, group_spec=None):
    """Assemble an Algebra from entry specs.

    q_spec maps (i, j) with 0 <= i < j < n to one of
      ("formal", name)   -- an independent Laurent parameter
      ("zeta", k)        -- the root of unity zeta_N^k
      ("rational", r)    -- r in {1, -1}
    Missing pairs default to a fresh formal parameter.
    group_spec is either None (trivial), ("cyclic", order, chi_values) with
    chi_values a list of (sign, zeta_power) pairs for the generator, or
    ("table", mult, chi_matrix) with chi entries (sign, zeta_power).
    """
    q_spec = dict(q_spec or {})
    for i in range(n):
        for j in range(i + 1, n):
            q_spec.setdefault((i, j), ("formal", f"q{i+1}{j+1}"))
    names = []
    for (i, j) in sorted(q_spec):
        kind = q_spec[(i, j)][0]
        if kind == "formal":
            names.append(q_spec[(i, j)][1])
    field = CycloField(N)
    uni = Universe(field, names)
    q_upper = {}
    pindex = 0
    for (i, j) in sorted(q_spec):
        spec = q_spec[(i, j)]
        if spec[0] == "formal":
            q_upper[(i, j)] = uni.param_unit(pindex)
            pindex += 1
        elif spec[0] == "zeta":
            q_upper[(i, j)] = uni.unit(zeta=spec[1] % N)
        elif spec[0] == "rational":
            if spec[1] not in (1, -1):
                raise ValueError("rational quantum entries must be +-1")
            q_upper[(i, j)] = uni.unit(sign=spec[1])
        else:
            raise ValueError(f"unknown quantum entry kind {spec[0]!r}")
    group = None
    if group_spec is not None and group_spec[0] != "trivial":
        if group_spec[0] == "cyclic":
            _, order, chi_values = group_spec
            chi_gen = [uni.unit(sign=s, zeta=k) for (s, k) in chi_values]
            group = make_cyclic_group(uni, n, order, chi_gen)
        elif group_spec[0] == "table":
            _, mult, chi_matrix = group_spec
            chi = [[uni.unit(sign=s, zeta=k) for (s, k) in row]
                   for row in chi_matrix]
            group = Group(mult, chi)
        else:
            raise ValueError(f"unknown group kind {group_spec[0]!r}")
    return Algebra(n, uni, q_upper, group)


def formal_algebra(n=2, group_spec=None):
    """All quantum entries independent formal parameters (N = 1)."""
    return build_algebra(n, N=1, group_spec=group_spec)


def quantum_coefficient_action_algebra(d):
    """Two generators, q = zeta_d, and the cyclic group of order d acting by
    g.x1 = q x1, g.x2 = q^{-1} x2."""
    return build_algebra(
        2, N=d, q_spec={(0, 1): ("zeta", 1)},
        group_spec=("cyclic", d, [(1, 1), (1, (-1) % d if d > 1 else 0)]))
