"""Independent naive oracle for the Groebner kernel tests.

Deliberately dumb: textbook Buchberger with a FIFO pair queue and no
criteria, no interreduction of the result, and membership decided by
dividing against every permutation of the computed basis (all answers must
be unanimous).  Shares no code with the package kernel beyond the public
Polynomial type.
"""

from __future__ import annotations

import itertools

from strictsmooth.poly import GREVLEX, Polynomial


def _lead(p, order=GREVLEX):
    return p.leading_monomial(order)


def _divide_once(p, divisors, order=GREVLEX):
    """One pass of multivariate division; returns (remainder, changed)."""
    remainder = Polynomial.zero(p.nvars, p.field)
    changed = False
    while not p.is_zero:
        lm = _lead(p, order)
        lc = p.coefficient(lm)
        hit = None
        for g in divisors:
            glm = _lead(g, order)
            if glm.divides(lm):
                hit = (g, glm)
                break
        if hit is None:
            mono_poly = Polynomial(p.nvars, p.field, {lm: lc})
            remainder = remainder + mono_poly
            p = p - mono_poly
        else:
            g, glm = hit
            shift = lm.quotient(glm)
            factor = Polynomial(p.nvars, p.field, {shift: lc / g.coefficient(glm)})
            p = p - factor * g
            changed = True
    return remainder, changed


def divide(p, divisors, order=GREVLEX):
    remainder, _ = _divide_once(p, divisors, order)
    return remainder


def naive_groebner(generators, order=GREVLEX, max_steps=2000):
    """Unoptimized Buchberger: process every pair, first in first out."""
    basis = [g for g in generators if not g.is_zero]
    if not basis:
        return []
    queue = list(itertools.combinations(range(len(basis)), 2))
    steps = 0
    while queue:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("naive Buchberger exceeded the step budget")
        i, j = queue.pop(0)
        gi, gj = basis[i], basis[j]
        lmi, lmj = _lead(gi, order), _lead(gj, order)
        lcm = lmi.lcm(lmj)
        ti = Polynomial(gi.nvars, gi.field, {lcm.quotient(lmi): gi.field.one})
        tj = Polynomial(gj.nvars, gj.field, {lcm.quotient(lmj): gj.field.one})
        spoly = ti * gi * (gi.field.one / gi.coefficient(lmi)) - tj * gj * (
            gj.field.one / gj.coefficient(lmj)
        )
        remainder = divide(spoly, basis, order)
        if not remainder.is_zero:
            basis.append(remainder)
            queue.extend((t, len(basis) - 1) for t in range(len(basis) - 1))
    return basis


def naive_member(p, basis, order=GREVLEX, permutation_cap=720):
    """Membership by division against every ordering of the basis.

    All orderings must agree (the basis is a Groebner basis, so remainders
    are ordering-independent); disagreement raises.
    """
    if not basis:
        return p.is_zero
    perms = itertools.permutations(basis)
    answers = set()
    for count, perm in enumerate(perms):
        if count >= permutation_cap:
            break
        answers.add(divide(p, list(perm), order).is_zero)
    if len(answers) != 1:
        raise AssertionError("division answers depend on the basis ordering")
    return answers.pop()


def naive_is_empty(basis) -> bool:
    return any((not g.is_zero) and g.is_constant for g in basis)
