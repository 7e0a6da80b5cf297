"""Membership conditions, the closed-form cohomology basis, the group
action on cochains with its averaging operator, and the independent rank
oracle.

The differential vanishes exactly on the subcomplexes indexed by the
gamma = beta - alpha satisfying the per-slot quantum/character relation;
those basis symbols are the cocycle classes, and the cohomology of the full
skew group algebra is the group-invariant part of their span.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .linalg import RowReducer, in_span
from .resolution import (Cochain, compositions, hom_differential,
                         slot_condition_holds, sub_index)
from .scalars import Frac, QQ


@dataclass(frozen=True)
class CgWitness:
    gamma: tuple
    g: int
    tags: tuple  # per slot: "minus-one" or "character-match"


def in_C_g(A, gamma, g):
    """Witness that gamma lies in the flat set for g, or None."""
    tags = []
    for l in range(A.n):
        if gamma[l] == -1:
            tags.append("minus-one")
        elif slot_condition_holds(A, g, gamma, l):
            tags.append("character-match")
        else:
            return None
    return CgWitness(tuple(gamma), g, tuple(tags))


def hh_component_basis(A, m, g):
    """All (alpha, beta) with |beta| = m and beta - alpha in the flat set;
    each spans a cohomology class of the g-component."""
    out = []
    for beta in sorted(compositions(A.n, m)):
        for alpha in sorted(iproduct((0, 1), repeat=A.n)):
            if in_C_g(A, sub_index(beta, alpha), g) is not None:
                out.append((tuple(alpha), beta))
    return out


def full_basis(A, m):
    """Every basis symbol (alpha, beta, g) in homological degree m,
    ordered lexicographically by (g, beta, alpha)."""
    out = []
    for g in range(A.group.order):
        for beta in sorted(compositions(A.n, m)):
            for alpha in sorted(iproduct((0, 1), repeat=A.n)):
                out.append((tuple(alpha), beta, g))
    return out


def g_action_on_cochain(A, h, c):
    """Conjugation action transported through the generator basis:
    h moves a basis symbol to (x^alpha (x) h g h^{-1}) e_beta^* scaled by
    prod_l chi_{h,l}^{alpha_l - beta_l}."""
    out = {}
    for (alpha, beta, g), coeff in c.terms.items():
        u = A.chi_prod(h, sub_index(alpha, beta))
        key = (alpha, beta, A.group.conjugate(h, g))
        v = coeff * u
        s = out.get(key)
        s = v if s is None else s + v
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return Cochain(A, c.degree, out)


def average(A, c):
    """Reynolds operator: the mean of the translates over the group."""
    total = Cochain(A, c.degree)
    for h in range(A.group.order):
        total = total + g_action_on_cochain(A, h, c)
    return total.scale(QQ(1, A.group.order))


@dataclass
class CohomologyBasis:
    degree: int
    entries: list      # (alpha, beta, g, CgWitness) before averaging
    classes: list      # invariant Cochain representatives


def invariant_basis(A, m):
    """Basis of the invariant cohomology in degree m: average the
    closed-form classes of every component and extract an independent set
    by exact elimination."""
    entries = []
    for g in range(A.group.order):
        for alpha, beta in hh_component_basis(A, m, g):
            entries.append((alpha, beta, g,
                            in_C_g(A, sub_index(beta, alpha), g)))
    entries.sort(key=lambda e: (e[2], e[1], e[0]))
    red = RowReducer()
    classes = []
    for alpha, beta, g, _w in entries:
        avg = average(A, Cochain.basis(A, alpha, beta, g))
        if avg.is_zero():
            continue
        # averaging coefficients are cyclotomic constants
        row = {k: v.constant() for k, v in avg.terms.items()}
        if any(v is None for v in row.values()):
            raise ArithmeticError("averaged coefficient is not constant")
        if red.add(row):
            classes.append(avg)
    return CohomologyBasis(m, entries, classes)


def invariant_dims(A, max_degree):
    """Closed-form dimensions of the invariant cohomology per degree."""
    return [len(invariant_basis(A, m).classes) for m in range(max_degree + 1)]


# ---------------------------------------------------------------------------
# the rank oracle
# ---------------------------------------------------------------------------

def _substituted_row(A, c, values):
    """Cochain -> sparse row of field elements under a parameter
    assignment (values may be None when there are no formal parameters)."""
    row = {}
    for key, coeff in c.terms.items():
        if isinstance(coeff, Frac):
            raise TypeError("rank oracle expects polynomial coefficients")
        v = coeff.substitute(values)
        if not v.is_zero():
            row[key] = v
    return row


def _seed_values(A, seed):
    """Deterministic nonzero rationals for the formal parameters."""
    import random
    rng = random.Random(seed)
    values = []
    for _ in range(A.uni.nparams):
        num = rng.randint(2, 97)
        den = rng.randint(2, 97)
        values.append(QQ(num, den))
    return values


def _component_delta_rank(A, m, g, values):
    """Rank of the differential out of degree m on the g-component."""
    rows = []
    for beta in compositions(A.n, m):
        for alpha in iproduct((0, 1), repeat=A.n):
            img = hom_differential(A, Cochain.basis(A, alpha, beta, g))
            if img.is_zero():
                continue
            rows.append(_substituted_row(A, img, values))
    red = RowReducer()
    for row in rows:
        red.add(row)
    return red.rank


def rank_oracle(A, m, g, seeds=(1,)):
    """(dim kernel, dim image-from-below, dim cohomology) for the
    g-component in degree m, by exact elimination after substituting the
    formal parameters at each seed; all seeds must agree."""
    if A.uni.nparams == 0:
        seeds = (None,)
    results = []
    for seed in seeds:
        values = _seed_values(A, seed) if seed is not None else []
        dim_m = num_compositions(A.n, m) * (2 ** A.n)
        rank_out = _component_delta_rank(A, m, g, values)
        rank_in = _component_delta_rank(A, m - 1, g, values) if m > 0 else 0
        results.append((dim_m - rank_out, rank_in,
                        dim_m - rank_out - rank_in))
    if len(set(results)) != 1:
        raise ArithmeticError(
            f"rank oracle disagrees across seeds: {results} "
            "(unlucky specialization)")
    return results[0]


def num_compositions(n, total):
    if total < 0:
        return 0
    from math import comb
    return comb(total + n - 1, n - 1)


def invariant_rank_oracle(A, m, seeds=(1,)):
    """Dimension of the invariant cohomology in degree m computed from
    ranks of the differential restricted to the invariant subcomplex."""
    if A.uni.nparams == 0:
        seeds = (None,)
    results = []
    for seed in seeds:
        values = _seed_values(A, seed) if seed is not None else []

        def invariant_rows(deg):
            red = RowReducer()
            vecs = []
            if deg < 0:
                return vecs
            for alpha, beta, g in full_basis(A, deg):
                avg = average(A, Cochain.basis(A, alpha, beta, g))
                if avg.is_zero():
                    continue
                row = _substituted_row(A, avg, values)
                if red.add(dict(row)):
                    vecs.append(avg)
            return vecs

        inv_m = invariant_rows(m)
        red = RowReducer()
        rank_out = 0
        for c in inv_m:
            img = hom_differential(A, c)
            if img.is_zero():
                continue
            if red.add(_substituted_row(A, img, values)):
                rank_out += 1
        red = RowReducer()
        rank_in = 0
        for c in invariant_rows(m - 1):
            img = hom_differential(A, c)
            if img.is_zero():
                continue
            if red.add(_substituted_row(A, img, values)):
                rank_in += 1
        results.append(len(inv_m) - rank_out - rank_in)
    if len(set(results)) != 1:
        raise ArithmeticError(
            f"invariant rank oracle disagrees across seeds: {results}")
    return results[0]


# ---------------------------------------------------------------------------
# equality in cohomology
# ---------------------------------------------------------------------------

def is_cocycle(A, c):
    return hom_differential(A, c).is_zero()


def _frac_row(A, c):
    return {k: Frac.of(v, A.uni) for k, v in c.terms.items()}


def is_coboundary(A, c):
    """Exact membership of c in the image of the differential from one
    degree below, over the quotient field of the coefficient ring."""
    if c.is_zero():
        return True
    if c.degree == 0:
        return False
    rows = []
    for alpha, beta, g in full_basis(A, c.degree - 1):
        img = hom_differential(A, Cochain.basis(A, alpha, beta, g))
        if not img.is_zero():
            rows.append(_frac_row(A, img))
    return in_span(rows, _frac_row(A, c))


def class_equal(A, c1, c2):
    """Equality in cohomology; both inputs must be cocycles."""
    if c1.degree != c2.degree and not (c1.is_zero() or c2.is_zero()):
        raise ValueError("cannot compare classes of different degrees")
    for c in (c1, c2):
        if not is_cocycle(A, c):
            raise ValueError("class_equal requires cocycles")
    return is_coboundary(A, c1 - c2)
