"""Sparse multivariate polynomials over an exact field.

A polynomial is an immutable map from exponent vectors to nonzero
coefficients.  All ring operations are exact; there is no floating point
anywhere.  Terms are stored in descending graded-reverse-lexicographic
order so that iteration, rendering and serialization are deterministic.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import StructuralError
from .scalars import QQ, coefficient_sign_magnitude


class Monomial:
    """Exponent vector of fixed length, with the total degree cached."""

    __slots__ = ("exps", "degree")

    def __init__(self, exps: Iterable[int]):
        exps = tuple(exps)
        for e in exps:
            if not isinstance(e, int) or e < 0:
                raise StructuralError(f"exponents must be nonnegative integers: {exps}")
        self.exps = exps
        self.degree = sum(exps)

    @classmethod
    def unit(cls, nvars: int) -> "Monomial":
        return cls((0,) * nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Monomial":
        if not 0 <= index < nvars:
            raise StructuralError(f"variable index {index} out of range for {nvars} variables")
        return cls(tuple(1 if i == index else 0 for i in range(nvars)))

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def quotient(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a - b for a, b in zip(self.exps, other.exps)))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def degree_in(self, indices: Iterable[int]) -> int:
        return sum(self.exps[i] for i in indices)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __repr__(self):
        return f"Monomial{self.exps}"


def _grevlex_key(exps):
    return sum(exps), tuple(-e for e in reversed(exps))


class MonomialOrder:
    """A global monomial order, exposed as a sort key on exponent vectors."""

    name = "order"

    def tuple_key(self, exps):
        raise NotImplementedError

    def key(self, monomial: Monomial):
        return self.tuple_key(monomial.exps)

    def __repr__(self):
        return f"<{self.name}>"


class GrevlexOrder(MonomialOrder):
    name = "grevlex"

    def tuple_key(self, exps):
        return _grevlex_key(exps)

    def __eq__(self, other):
        return isinstance(other, GrevlexOrder)

    def __hash__(self):
        return hash("grevlex")


class LexOrder(MonomialOrder):
    name = "lex"

    def tuple_key(self, exps):
        return exps

    def __eq__(self, other):
        return isinstance(other, LexOrder)

    def __hash__(self):
        return hash("lex")


class BlockOrder(MonomialOrder):
    """Elimination order: the first `split` variables dominate.

    Both blocks are compared by grevlex; a Groebner basis under this order
    intersected with the second block eliminates the first block.
    """

    def __init__(self, split: int):
        if split < 0:
            raise StructuralError("split index must be nonnegative")
        self.split = split
        self.name = f"block[{split}]"

    def tuple_key(self, exps):
        return _grevlex_key(exps[: self.split]), _grevlex_key(exps[self.split:])

    def __eq__(self, other):
        return isinstance(other, BlockOrder) and other.split == self.split

    def __hash__(self):
        return hash(("block", self.split))


GREVLEX = GrevlexOrder()
LEX = LexOrder()


class Polynomial:
    """Immutable sparse polynomial with exact coefficients.

    The term map never stores a zero coefficient; the zero polynomial is the
    empty map.  Operations between polynomials require equal variable counts
    and equal fields, otherwise a StructuralError is raised.
    """

    __slots__ = ("nvars", "field", "_terms", "_hash")

    def __init__(self, nvars: int, field=QQ, terms: Mapping | None = None):
        self.nvars = nvars
        self.field = field
        cleaned = {}
        if terms:
            for mono, coeff in terms.items():
                if not isinstance(mono, Monomial):
                    mono = Monomial(mono)
                if len(mono.exps) != nvars:
                    raise StructuralError(
                        f"monomial {mono!r} has {len(mono.exps)} exponents, expected {nvars}"
                    )
                coeff = field.coerce(coeff)
                if coeff:
                    prev = cleaned.get(mono)
                    if prev is not None:
                        coeff = prev + coeff
                        if not coeff:
                            del cleaned[mono]
                            continue
                    cleaned[mono] = coeff
        # canonical descending term order for deterministic iteration
        self._terms = dict(
            sorted(cleaned.items(), key=lambda kv: _grevlex_key(kv[0].exps), reverse=True)
        )
        self._hash = None

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, field=QQ) -> "Polynomial":
        return cls(nvars, field)

    @classmethod
    def constant(cls, value, nvars: int, field=QQ) -> "Polynomial":
        return cls(nvars, field, {Monomial.unit(nvars): value})

    @classmethod
    def variable(cls, index: int, nvars: int, field=QQ) -> "Polynomial":
        return cls(nvars, field, {Monomial.variable(index, nvars): field.one})

    # ----- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(m.degree == 0 for m in self._terms)

    def constant_value(self):
        if not self.is_constant:
            raise StructuralError("polynomial is not constant")
        for c in self._terms.values():
            return c
        return self.field.zero

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(m.degree for m in self._terms)

    def degree_in(self, indices) -> int:
        indices = tuple(indices)
        if not self._terms:
            return -1
        return max(m.degree_in(indices) for m in self._terms)

    def terms(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self._terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    def coefficient(self, mono: Monomial):
        return self._terms.get(mono, self.field.zero)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self._terms:
            raise StructuralError("the zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self._terms[self.leading_monomial(order)]

    # ----- ring operations ------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise StructuralError(
                f"variable counts differ: {self.nvars} vs {other.nvars}"
            )
        if self.field != other.field:
            raise StructuralError("cannot combine polynomials over different fields")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars, self.field)
        self._check_compatible(other)
        merged = dict(self._terms)
        for m, c in other._terms.items():
            cur = merged.get(m)
            val = c if cur is None else cur + c
            if val:
                merged[m] = val
            elif cur is not None:
                del merged[m]
        return Polynomial(self.nvars, self.field, merged)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, self.field, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars, self.field)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            scalar = self.field.coerce(other)
            if not scalar:
                return Polynomial.zero(self.nvars, self.field)
            return Polynomial(
                self.nvars, self.field, {m: c * scalar for m, c in self._terms.items()}
            )
        self._check_compatible(other)
        acc: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1.mul(m2)
                c = c1 * c2
                cur = acc.get(m)
                val = c if cur is None else cur + c
                if val:
                    acc[m] = val
                elif cur is not None:
                    del acc[m]
        return Polynomial(self.nvars, self.field, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise StructuralError("polynomial exponent must be a nonnegative integer")
        result = Polynomial.constant(self.field.one, self.nvars, self.field)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.field == other.field
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.nvars, self.field, frozenset(self._terms.items()))
            )
        return self._hash

    # ----- calculus and substitution ---------------------------------------

    def partial(self, index: int) -> "Polynomial":
        """Formal partial derivative.

        In prime characteristic the exponent multiplies into the coefficient
        mod p, so d(x^p)/dx = 0.
        """
        if not 0 <= index < self.nvars:
            raise StructuralError(f"variable index {index} out of range")
        acc = {}
        for m, c in self._terms.items():
            e = m.exps[index]
            if not e:
                continue
            coeff = c * e
            if not coeff:
                continue
            exps = list(m.exps)
            exps[index] = e - 1
            acc[Monomial(exps)] = coeff
        return Polynomial(self.nvars, self.field, acc)

    def substitute(
        self, images: Mapping[int, "Polynomial"], nvars: int | None = None
    ) -> "Polynomial":
        """Substitute polynomials for variables (exact composition).

        Unmapped variables are sent to the variable with the same index in
        the target ring.  All images must share one variable count, which
        becomes the variable count of the result.
        """
        if images:
            target = None
            for img in images.values():
                if target is None:
                    target = img.nvars
                elif img.nvars != target:
                    raise StructuralError("substitution images disagree on variable count")
                if img.field != self.field:
                    raise StructuralError("substitution images over a different field")
            if nvars is not None and nvars != target:
                raise StructuralError("explicit variable count disagrees with images")
        else:
            target = self.nvars if nvars is None else nvars
            if target == self.nvars:
                return self
        base = {}
        for i in range(self.nvars):
            if i in images:
                base[i] = images[i]
            else:
                if i >= target:
                    raise StructuralError(
                        f"variable {i} has no image and does not exist in the target ring"
                    )
                base[i] = Polynomial.variable(i, target, self.field)
        powers: dict = {i: [Polynomial.constant(self.field.one, target, self.field), base[i]] for i in base}

        def power(i, e):
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * base[i])
            return cache[e]

        acc = Polynomial.zero(target, self.field)
        for m, c in self._terms.items():
            term = Polynomial.constant(c, target, self.field)
            for i, e in enumerate(m.exps):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return acc

    def extended(self, nvars: int) -> "Polynomial":
        """The same polynomial viewed in a larger ring (zero-padded exponents)."""
        if nvars < self.nvars:
            raise StructuralError("cannot shrink the ambient ring")
        if nvars == self.nvars:
            return self
        pad = (0,) * (nvars - self.nvars)
        return Polynomial(
            nvars, self.field, {Monomial(m.exps + pad): c for m, c in self._terms.items()}
        )

    def graded_part(self, indices, k: int) -> "Polynomial":
        """Sum of the terms whose total degree in `indices` is exactly k."""
        indices = tuple(indices)
        acc = {m: c for m, c in self._terms.items() if m.degree_in(indices) == k}
        return Polynomial(self.nvars, self.field, acc)

    # ----- rendering --------------------------------------------------------

    def render(self, names, order: MonomialOrder = GREVLEX) -> str:
        """Canonical text form: terms descending in `order`, explicit `*` and `^`."""
        if len(names) != self.nvars:
            raise StructuralError("name list does not match variable count")
        if not self._terms:
            return "0"
        chunks = []
        for m, c in self.sorted_terms(order):
            negative, magnitude = coefficient_sign_magnitude(c)
            factors = [
                f"{names[i]}^{e}" if e > 1 else names[i]
                for i, e in enumerate(m.exps)
                if e
            ]
            if not factors:
                body = magnitude
            elif magnitude == "1":
                body = "*".join(factors)
            else:
                body = "*".join([magnitude, *factors])
            if not chunks:
                chunks.append(f"-{body}" if negative else body)
            else:
                chunks.append(f" - {body}" if negative else f" + {body}")
        return "".join(chunks)

    def __repr__(self):
        names = [f"v{i}" for i in range(self.nvars)]
        return f"Polynomial({self.render(names)})"
