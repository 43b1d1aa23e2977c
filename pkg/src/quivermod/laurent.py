"""Multivariate Laurent polynomials and rational functions over Z.

Exponent vectors are dense integer tuples of fixed length; coefficients
are Python ints (arbitrary precision).  No zero coefficient is ever
stored, so dict equality is canonical equality.

Rational functions are reduced by integer content and by a common
monomial factor only; equality goes through cross-multiplication.  Full
multivariate gcd is deliberately avoided.
"""

from __future__ import annotations

from math import gcd


class LaurentPolynomial:
    """Sparse Laurent polynomial: dict from exponent tuple to coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        if terms is None:
            terms = {}
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        if c == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, nvars, exponents, c=1):
        return cls(nvars, {tuple(exponents): c})

    @classmethod
    def generator(cls, nvars, i):
        exps = [0] * nvars
        exps[i] = 1
        return cls.monomial(nvars, exps)

    # -- predicates -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * self.nvars: 1}

    def is_monomial(self):
        return len(self.terms) == 1

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            new = terms.get(e, 0) + c
            if new:
                terms[e] = new
            else:
                terms.pop(e, None)
        return LaurentPolynomial(self.nvars, terms)

    def __neg__(self):
        return LaurentPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                new = terms.get(e, 0) + c1 * c2
                if new:
                    terms[e] = new
                else:
                    terms.pop(e, None)
        return LaurentPolynomial(self.nvars, terms)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial; "
                             "use RationalFunction for inverses")
        out = LaurentPolynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(self.nvars, other)
        return NotImplemented

    __radd__ = __add__
    __rmul__ = __mul__

    # -- structure --------------------------------------------------------------

    def content(self):
        """Positive gcd of all coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c))
        return g

    def min_exponents(self):
        """Componentwise minimum exponent over the support."""
        if not self.terms:
            return (0,) * self.nvars
        mins = [min(e[i] for e in self.terms) for i in range(self.nvars)]
        return tuple(mins)

    def shift(self, exponents):
        """Multiply by the monomial with the given exponent vector."""
        return LaurentPolynomial(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exponents)): c
             for e, c in self.terms.items()})

    def scale(self, c):
        if c == 0:
            return LaurentPolynomial(self.nvars)
        return LaurentPolynomial(self.nvars, {e: c * v for e, v in self.terms.items()})

    def leading(self):
        """(exponent, coefficient) of the lexicographically largest term."""
        e = max(self.terms)
        return e, self.terms[e]

    def div_exact(self, other):
        """Exact division in the Laurent ring; raises if not divisible."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomial(self.nvars)
        # per-variable degrees of a product add, so the quotient support
        # lives in this box; leaving it proves the division inexact
        lo = tuple(a - b for a, b in zip(self.min_exponents(), other.min_exponents()))
        hi = tuple(max(e[i] for e in self.terms) - max(e[i] for e in other.terms)
                   for i in range(self.nvars))
        rem = self
        de, dc = other.leading()
        qterms = {}
        while not rem.is_zero():
            re, rc = rem.leading()
            qe = tuple(a - b for a, b in zip(re, de))
            if rc % dc != 0 or any(not lo[i] <= qe[i] <= hi[i] for i in range(self.nvars)):
                raise ValueError("inexact Laurent division")
            qc = rc // dc
            qterms[qe] = qc
            rem = rem - other.shift(qe).scale(qc)
        return LaurentPolynomial(self.nvars, qterms)

    # -- display -------------------------------------------------------------------

    def to_string(self, names=None):
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = [
                names[i] if k == 1 else f"{names[i]}^{k}"
                for i, k in enumerate(e) if k != 0
            ]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self):
        return f"<LaurentPolynomial {self.to_string()}>"

    def __eq__(self, other):
        return (isinstance(other, LaurentPolynomial)
                and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))


class RationalFunction:
    """Quotient of Laurent polynomials, reduced by content and monomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPolynomial, den: LaurentPolynomial):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.nvars != den.nvars:
            raise ValueError("variable count mismatch")
        # pull out the common monomial so supports start at exponent 0
        if num.is_zero():
            den = LaurentPolynomial.constant(den.nvars, 1)
        else:
            nmin = num.min_exponents()
            dmin = den.min_exponents()
            common = tuple(min(a, b) for a, b in zip(nmin, dmin))
            if any(common):
                neg = tuple(-c for c in common)
                num = num.shift(neg)
                den = den.shift(neg)
            g = gcd(num.content(), den.content())
            if g > 1:
                num = LaurentPolynomial(num.nvars, {e: c // g for e, c in num.terms.items()})
                den = LaurentPolynomial(den.nvars, {e: c // g for e, c in den.terms.items()})
        # normalize the denominator's leading coefficient to be positive
        if den.leading()[1] < 0:
            num = -num
            den = -den
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: LaurentPolynomial):
        return cls(p, LaurentPolynomial.constant(p.nvars, 1))

    @classmethod
    def generator(cls, nvars, i):
        return cls.from_poly(LaurentPolynomial.generator(nvars, i))

    @classmethod
    def constant(cls, nvars, c):
        return cls.from_poly(LaurentPolynomial.constant(nvars, c))

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __add__(self, other):
        return RationalFunction(
            self.num * other.den + other.num * self.den,
            self.den * other.den)

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __pow__(self, k):
        if k == 0:
            return RationalFunction.constant(self.num.nvars, 1)
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def is_monomial_denominator(self):
        return self.den.is_monomial()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable")

    def to_string(self, names=None):
        num = self.num.to_string(names)
        if self.den.is_one():
            return num
        return f"({num}) / ({self.den.to_string(names)})"

    def __repr__(self):
        return f"<RationalFunction {self.to_string()}>"
