"""Groebner-basis kernel and the decision procedures built on it.

The kernel is a Buchberger loop with the normal pair-selection strategy and
the coprime / chain criteria (critical-pair bookkeeping after Becker &
Weispfenning, p. 230).  It works on plain exponent tuples internally and
converts back to :class:`Polynomial` at the boundary.  Tie-breaking is
lexicographic on internal indices everywhere, so results are reproducible
bit for bit.
"""

from __future__ import annotations

import itertools
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional, Sequence

from .errors import DegreeLimitError, InternalCheckError, StructuralError
from .poly import GREVLEX, Monomial, MonomialOrder, Polynomial

_degree_limit_var: ContextVar[Optional[int]] = ContextVar("degree_limit", default=None)
_audit_var: ContextVar[Optional[Callable]] = ContextVar("basis_audit", default=None)


@contextmanager
def degree_limit(bound: Optional[int]):
    """Abort any Groebner run that produces a polynomial above `bound` degree."""
    token = _degree_limit_var.set(bound)
    try:
        yield
    finally:
        _degree_limit_var.reset(token)


@contextmanager
def basis_audit(callback: Callable):
    """Invoke `callback(gb)` on every GroebnerBasis computed in this context."""
    token = _audit_var.set(callback)
    try:
        yield
    finally:
        _audit_var.reset(token)


@dataclass(frozen=True)
class Ideal:
    """A polynomial ideal given by generators in a fixed ambient ring."""

    generators: tuple
    nvars: int
    field: object = None
    order: MonomialOrder = dc_field(default=GREVLEX)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        fld = self.field
        for g in gens:
            if g.is_zero:
                raise StructuralError("ideal generators must be nonzero")
            if g.nvars != self.nvars:
                raise StructuralError("generator does not live in the ambient ring")
            if fld is None:
                fld = g.field
            elif g.field != fld:
                raise StructuralError("generators over different fields")
        if fld is None:
            raise StructuralError("a generator-free ideal needs an explicit field")
        object.__setattr__(self, "field", fld)

    def plus(self, *polys: Polynomial) -> "Ideal":
        """The ideal with extra generators adjoined (zeros are dropped)."""
        extra = tuple(p for p in polys if not p.is_zero)
        return Ideal(self.generators + extra, self.nvars, self.field, self.order)

    def join(self, other: "Ideal") -> "Ideal":
        if other.nvars != self.nvars or other.field != self.field:
            raise StructuralError("cannot join ideals of different rings")
        return Ideal(self.generators + other.generators, self.nvars, self.field, self.order)


# --------------------------------------------------------------------------
# tuple-level kernel

def _mul_t(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _quo_t(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _divides_t(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm_t(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _check_degree(poly_dict, limit):
    if limit is not None and poly_dict:
        if max(sum(m) for m in poly_dict) > limit:
            raise DegreeLimitError(
                f"Groebner computation exceeded the degree guardrail ({limit})"
            )


def _monic(d, keyf):
    lc = d[max(d, key=keyf)]
    one = lc / lc
    if lc == one:
        return d
    return {m: c / lc for m, c in d.items()}


def _reduce(target, basis, keyf):
    """Full normal form of `target` against monic (lm, dict) pairs."""
    work = dict(target)
    rem = {}
    while work:
        lm = max(work, key=keyf)
        c = work.pop(lm)
        for blm, bd in basis:
            if _divides_t(blm, lm):
                shift = _quo_t(lm, blm)
                for m, bc in bd.items():
                    if m == blm:
                        continue
                    mm = _mul_t(m, shift)
                    cur = work.get(mm)
                    val = -(c * bc) if cur is None else cur - c * bc
                    if val:
                        work[mm] = val
                    elif cur is not None:
                        del work[mm]
                break
        else:
            rem[lm] = c
    return rem


def _spoly_t(p, q, lmp, lmq):
    """S-polynomial of two monic tuple-polynomials."""
    lcm = _lcm_t(lmp, lmq)
    a = _quo_t(lcm, lmp)
    b = _quo_t(lcm, lmq)
    out = {}
    for m, c in p.items():
        out[_mul_t(m, a)] = c
    for m, c in q.items():
        mm = _mul_t(m, b)
        cur = out.get(mm)
        val = -c if cur is None else cur - c
        if val:
            out[mm] = val
        elif cur is not None:
            del out[mm]
    return out


def _update(G, B, ih, lms):
    # critical-pair maintenance with the coprime and chain criteria,
    # following Becker-Weispfenning p. 230
    mh = lms[ih]
    C = sorted(G)
    D = []
    while C:
        ig = C.pop(0)
        lcm_hg = _lcm_t(mh, lms[ig])
        if _mul_t(mh, lms[ig]) == lcm_hg:
            D.append((ih, ig))
        elif not any(
            _divides_t(_lcm_t(mh, lms[ip]), lcm_hg) for ip in C
        ) and not any(_divides_t(_lcm_t(mh, lms[jp]), lcm_hg) for _, jp in D):
            D.append((ih, ig))
    E = [
        (a, b)
        for a, b in D
        if _mul_t(mh, lms[b]) != _lcm_t(mh, lms[b])
    ]
    B_new = set()
    for i, j in B:
        lcm_ij = _lcm_t(lms[i], lms[j])
        if (
            not _divides_t(mh, lcm_ij)
            or _lcm_t(lms[i], mh) == lcm_ij
            or _lcm_t(lms[j], mh) == lcm_ij
        ):
            B_new.add((i, j))
    B_new.update(E)
    G_new = {g for g in G if not _divides_t(mh, lms[g])}
    G_new.add(ih)
    return G_new, B_new


def _interreduce_seed(gens, keyf):
    f1 = [_monic(dict(g), keyf) for g in gens if g]
    while True:
        f = f1
        f1 = []
        for i, p in enumerate(f):
            if f[:i]:
                basis = [(max(q, key=keyf), q) for q in f[:i]]
                r = _reduce(p, basis, keyf)
            else:
                r = p
            if r:
                f1.append(_monic(r, keyf))
        if f == f1:
            return f


def _unit_basis(nvars, one):
    return [{(0,) * nvars: one}]


def _buchberger(gens, keyf, nvars, one, limit):
    f = _interreduce_seed(gens, keyf)
    if not f:
        return []
    for p in f:
        _check_degree(p, limit)
        if not any(max(p, key=keyf)):
            return _unit_basis(nvars, one)

    polys = list(f)
    lms = [max(p, key=keyf) for p in polys]
    G: set = set()
    CP: set = set()
    pending = set(range(len(polys)))
    while pending:
        ih = min(pending, key=lambda i: (keyf(lms[i]), i))
        pending.remove(ih)
        G, CP = _update(G, CP, ih, lms)

    while CP:
        i, j = min(CP, key=lambda pr: (keyf(_lcm_t(lms[pr[0]], lms[pr[1]])), pr))
        CP.remove((i, j))
        s = _spoly_t(polys[i], polys[j], lms[i], lms[j])
        if not s:
            continue
        ordered = sorted(G, key=lambda g: (keyf(lms[g]), g))
        r = _reduce(s, [(lms[g], polys[g]) for g in ordered], keyf)
        if not r:
            continue
        _check_degree(r, limit)
        r = _monic(r, keyf)
        lm_r = max(r, key=keyf)
        if not any(lm_r):
            return _unit_basis(nvars, one)
        polys.append(r)
        lms.append(lm_r)
        G, CP = _update(G, CP, len(polys) - 1, lms)

    active = sorted(G, key=lambda g: (keyf(lms[g]), g))
    out = []
    for g in active:
        others = [(lms[h], polys[h]) for h in active if h != g]
        r = _reduce(polys[g], others, keyf)
        if r:
            out.append(_monic(r, keyf))
    out.sort(key=lambda p: keyf(max(p, key=keyf)), reverse=True)
    return out


def _monomial_basis(gens, keyf, one):
    monos = sorted({next(iter(g)) for g in gens}, key=keyf)
    keep = []
    for m in monos:
        if not any(_divides_t(k, m) for k in keep):
            keep.append(m)
    return [{m: one} for m in sorted(keep, key=keyf, reverse=True)]


def _to_dict(p: Polynomial):
    return {m.exps: c for m, c in p.terms()}


def _from_dict(d, nvars, fld) -> Polynomial:
    return Polynomial(nvars, fld, {Monomial(m): c for m, c in d.items()})


# --------------------------------------------------------------------------
# public surface


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis together with its order and source ideal."""

    basis: tuple
    order: MonomialOrder
    source: Ideal

    @property
    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero

    def verify(self):
        """Assert the defining invariants; raises InternalCheckError on failure.

        Checks that every basis element is monic, that the basis is reduced
        (no leading monomial divides any monomial of another element), that
        every S-polynomial of a basis pair reduces to zero, and that every
        generator of the source ideal reduces to zero.
        """
        keyf = self.order.tuple_key
        dicts = [_to_dict(g) for g in self.basis]
        lms = [max(d, key=keyf) for d in dicts]
        one = self.source.field.one
        for d, lm in zip(dicts, lms):
            if d[lm] != one:
                raise InternalCheckError("basis element is not monic")
        for i, d in enumerate(dicts):
            for j, lm in enumerate(lms):
                if i == j:
                    continue
                if any(_divides_t(lm, m) for m in d):
                    raise InternalCheckError("basis is not reduced")
        pairs = [(lms[i], dicts[i]) for i in range(len(dicts))]
        for i in range(len(dicts)):
            for j in range(i + 1, len(dicts)):
                s = _spoly_t(dicts[i], dicts[j], lms[i], lms[j])
                if _reduce(s, pairs, keyf):
                    raise InternalCheckError(
                        "an S-polynomial does not reduce to zero against the basis"
                    )
        for g in self.source.generators:
            if _reduce(_to_dict(g), pairs, keyf):
                raise InternalCheckError("a source generator does not reduce to zero")


def groebner(ideal: Ideal) -> GroebnerBasis:
    """Reduced Groebner basis of `ideal` with respect to its monomial order.

    Deterministic: identical inputs produce the identical basis, and the
    reduced basis itself is mathematically unique for the given order.
    """
    limit = _degree_limit_var.get()
    keyf = ideal.order.tuple_key
    gens = [_to_dict(g) for g in ideal.generators]
    for g in gens:
        _check_degree(g, limit)
    if gens and all(len(g) == 1 for g in gens):
        basis = _monomial_basis(gens, keyf, ideal.field.one)
    else:
        basis = _buchberger(gens, keyf, ideal.nvars, ideal.field.one, limit)
    polys = tuple(_from_dict(d, ideal.nvars, ideal.field) for d in basis)
    gb = GroebnerBasis(polys, ideal.order, ideal)
    hook = _audit_var.get()
    if hook is not None:
        hook(gb)
    return gb


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of `p` under multivariate division by the basis.

    Zero exactly when p lies in the ideal.
    """
    if p.nvars != gb.source.nvars:
        raise StructuralError("polynomial does not live in the basis ring")
    if p.field != gb.source.field:
        raise StructuralError("polynomial over a different field than the basis")
    keyf = gb.order.tuple_key
    pairs = []
    for g in gb.basis:
        d = _to_dict(g)
        pairs.append((max(d, key=keyf), d))
    r = _reduce(_to_dict(p), pairs, keyf)
    return _from_dict(r, p.nvars, p.field)


def spolynomial(p: Polynomial, q: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    if p.is_zero or q.is_zero:
        raise StructuralError("S-polynomial of a zero polynomial")
    keyf = order.tuple_key
    dp, dq = _monic(_to_dict(p), keyf), _monic(_to_dict(q), keyf)
    s = _spoly_t(dp, dq, max(dp, key=keyf), max(dq, key=keyf))
    return _from_dict(s, p.nvars, p.field)


def power_ideal(ideal: Ideal, k: int) -> Ideal:
    """The ideal generated by all k-fold products of the generators."""
    if k < 1:
        raise StructuralError("ideal power requires k >= 1")
    if k == 1:
        return ideal
    gens = []
    for combo in itertools.combinations_with_replacement(ideal.generators, k):
        prod = combo[0]
        for g in combo[1:]:
            prod = prod * g
        gens.append(prod)
    return Ideal(tuple(gens), ideal.nvars, ideal.field, ideal.order)


def ideal_power_membership(p: Polynomial, ideal: Ideal, k: int) -> bool:
    """Whether p lies in the k-th power of the ideal."""
    if k < 1:
        raise StructuralError("ideal power membership requires k >= 1")
    if p.is_zero:
        return True
    return groebner(power_ideal(ideal, k)).contains(p)


def is_empty_affine(ideal: Ideal) -> bool:
    """Whether the vanishing locus is empty over the algebraic closure.

    By the Nullstellensatz this holds exactly when the reduced basis is {1}.
    """
    return groebner(ideal).is_unit


def radical_membership(g: Polynomial, ideal: Ideal) -> bool:
    """Whether g vanishes on the whole vanishing locus of the ideal.

    Decided with one extra variable t: g is in the radical exactly when
    the ideal together with 1 - t*g has empty vanishing locus.
    """
    if g.nvars != ideal.nvars or g.field != ideal.field:
        raise StructuralError("radical membership requires a polynomial of the same ring")
    if g.is_zero:
        return True
    n = ideal.nvars
    lifted = [p.extended(n + 1) for p in ideal.generators]
    t = Polynomial.variable(n, n + 1, ideal.field)
    witness = Polynomial.constant(ideal.field.one, n + 1, ideal.field) - t * g.extended(n + 1)
    return is_empty_affine(Ideal(tuple(lifted) + (witness,), n + 1, ideal.field))


def krull_dimension(ideal: Ideal) -> Optional[int]:
    """Dimension of the vanishing locus over the closure; None when empty.

    Computed as the largest size of a variable subset that is independent
    modulo the leading-term ideal of a Groebner basis.
    """
    gb = groebner(ideal)
    if gb.is_unit:
        return None
    keyf = ideal.order.tuple_key
    supports = []
    for g in gb.basis:
        lm = g.leading_monomial(ideal.order)
        supports.append(frozenset(i for i, e in enumerate(lm.exps) if e))
    for size in range(ideal.nvars, -1, -1):
        for subset in itertools.combinations(range(ideal.nvars), size):
            chosen = frozenset(subset)
            if not any(s <= chosen for s in supports):
                return size
    raise InternalCheckError("dimension search fell through")  # pragma: no cover


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by cofactor expansion along the first row."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise StructuralError("determinant requires a square matrix")
    if n == 1:
        return matrix[0][0]
    first = matrix[0]
    total = None
    for j, entry in enumerate(first):
        if entry.is_zero:
            continue
        minor = [
            [row[c] for c in range(n) if c != j]
            for row in matrix[1:]
        ]
        term = entry * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        e0 = matrix[0][0]
        return Polynomial.zero(e0.nvars, e0.field)
    return total


def minors_ideal(matrix: Sequence[Sequence[Polynomial]], size: int) -> Ideal:
    """Ideal generated by all size x size minors of a polynomial matrix."""
    rows = len(matrix)
    if rows == 0 or len(matrix[0]) == 0:
        raise StructuralError("minors of an empty matrix")
    cols = len(matrix[0])
    if any(len(row) != cols for row in matrix):
        raise StructuralError("matrix rows have unequal lengths")
    sample = matrix[0][0]
    nvars, fld = sample.nvars, sample.field
    for row in matrix:
        for entry in row:
            if entry.nvars != nvars or entry.field != fld:
                raise StructuralError("matrix entries live in different rings")
    if size == 0:
        one = Polynomial.constant(fld.one, nvars, fld)
        return Ideal((one,), nvars, fld)
    if size > min(rows, cols):
        raise StructuralError(
            f"minor size {size} exceeds matrix dimensions {rows}x{cols}"
        )
    gens = []
    for ridx in itertools.combinations(range(rows), size):
        for cidx in itertools.combinations(range(cols), size):
            minor = determinant([[matrix[r][c] for c in cidx] for r in ridx])
            if not minor.is_zero:
                gens.append(minor)
    return Ideal(tuple(gens), nvars, fld)
