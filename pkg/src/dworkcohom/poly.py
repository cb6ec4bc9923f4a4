"""Sparse multivariate polynomial arithmetic over an exact base field.

A monomial is an exponent tuple, one non-negative integer per ambient
variable.  A polynomial is a finite map from monomials to nonzero field
elements; the zero polynomial stores no terms.  All values are immutable
after construction and hashable.

The global monomial order is graded lexicographic with x0 > x1 > ...:
degrees ascend, and within one degree exponent tuples are listed in
descending lexicographic order.  Every basis and matrix in the engine
inherits this order, so results are reproducible byte for byte.

Optional positive integer weights replace the total degree by
sum(w_i * nu_i) throughout (quasi-homogeneous grading).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .exceptions import VariableCountMismatch
from .fields import QQ

Monomial = tuple


def mono_degree(nu: Monomial, weights=None) -> int:
    if weights is None:
        return sum(nu)
    return sum(w * e for w, e in zip(weights, nu))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_basis(nvars: int, d: int, weights=None) -> list:
    """All monomials of (weighted) total degree exactly d, lex-descending.

    For trivial weights the count is C(d + nvars - 1, nvars - 1).
    """
    if nvars < 1:
        raise ValueError("nvars must be >= 1")
    if d < 0:
        return []
    if weights is not None and len(weights) != nvars:
        raise VariableCountMismatch("weight list length != variable count")
    out = []
    exps = [0] * nvars

    def rec(k: int, rem: int):
        w = 1 if weights is None else weights[k]
        if k == nvars - 1:
            if rem % w == 0:
                exps[k] = rem // w
                out.append(tuple(exps))
                exps[k] = 0
            return
        for e in range(rem // w, -1, -1):
            exps[k] = e
            rec(k + 1, rem - e * w)
        exps[k] = 0

    rec(0, d)
    return out


def count_monomials(nvars: int, d: int) -> int:
    """Number of monomials of total degree d in nvars variables."""
    return comb(d + nvars - 1, nvars - 1) if d >= 0 else 0


class Polynomial:
    """Immutable sparse polynomial over an exact field."""

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field, nvars: int, terms=None):
        clean = {}
        for nu, c in (terms or {}).items():
            nu = tuple(nu)
            if len(nu) != nvars or any(e < 0 for e in nu):
                raise ValueError(f"bad exponent tuple {nu} for nvars={nvars}")
            c = field.coerce(c)
            if c:
                acc = clean.get(nu)
                clean[nu] = c if acc is None else acc + c
                if not clean[nu]:
                    del clean[nu]
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("Polynomial is immutable")

    # ---- constructors -------------------------------------------------

    @staticmethod
    def zero(field, nvars: int) -> "Polynomial":
        return Polynomial(field, nvars, {})

    @staticmethod
    def constant(field, nvars: int, c) -> "Polynomial":
        return Polynomial(field, nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(field, nvars: int, k: int) -> "Polynomial":
        if not 0 <= k < nvars:
            raise IndexError(f"variable index {k} out of range")
        nu = [0] * nvars
        nu[k] = 1
        return Polynomial(field, nvars, {tuple(nu): 1})

    @staticmethod
    def monomial(field, nvars: int, nu, c=1) -> "Polynomial":
        return Polynomial(field, nvars, {tuple(nu): c})

    # ---- ring structure ------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise VariableCountMismatch(
                f"variable counts differ: {self.nvars} vs {other.nvars}")
        if self.field is not other.field:
            raise TypeError("polynomials over different base fields")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.field, self.nvars, other)
        self._check_compatible(other)
        terms = dict(self.terms)
        for nu, c in other.terms.items():
            acc = terms.get(nu)
            s = c if acc is None else acc + c
            if s:
                terms[nu] = s
            elif acc is not None:
                del terms[nu]
        out = Polynomial.zero(self.field, self.nvars)
        object.__setattr__(out, "terms", terms)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial.zero(self.field, self.nvars)
        object.__setattr__(out, "terms", {nu: -c for nu, c in self.terms.items()})
        return out

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.field, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_compatible(other)
        terms = {}
        for nu1, c1 in self.terms.items():
            for nu2, c2 in other.terms.items():
                nu = mono_mul(nu1, nu2)
                c = c1 * c2
                acc = terms.get(nu)
                s = c if acc is None else acc + c
                if s:
                    terms[nu] = s
                elif acc is not None:
                    del terms[nu]
        out = Polynomial.zero(self.field, self.nvars)
        object.__setattr__(out, "terms", terms)
        return out

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if not c:
            return Polynomial.zero(self.field, self.nvars)
        out = Polynomial.zero(self.field, self.nvars)
        object.__setattr__(out, "terms", {nu: v * c for nu, v in self.terms.items()})
        return out

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.nvars == other.nvars and self.field is other.field
                    and self.terms == other.terms)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash",
                hash((self.nvars, frozenset(self.terms.items()))))
        return self._hash

    # ---- calculus and grading -------------------------------------------

    def partial_derivative(self, k: int) -> "Polynomial":
        if not 0 <= k < self.nvars:
            raise IndexError(f"variable index {k} out of range")
        terms = {}
        for nu, c in self.terms.items():
            e = nu[k]
            if e:
                dnu = nu[:k] + (e - 1,) + nu[k + 1:]
                terms[dnu] = c * e
        return Polynomial(self.field, self.nvars, terms)

    def total_degree(self, weights=None) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(mono_degree(nu, weights) for nu in self.terms)

    def homogeneous_degree(self, weights=None):
        """The common (weighted) degree of all terms, or None if mixed."""
        if not self.terms:
            raise ValueError("degree of the zero polynomial is undefined")
        degs = {mono_degree(nu, weights) for nu in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def map_coefficients(self, func, field) -> "Polynomial":
        return Polynomial(field, self.nvars, {nu: func(c) for nu, c in self.terms.items()})

    def extend(self, nvars: int) -> "Polynomial":
        """Embed into a ring with more variables (new ones appended)."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink the variable count")
        pad = (0,) * (nvars - self.nvars)
        return Polynomial(self.field, nvars,
                          {nu + pad: c for nu, c in self.terms.items()})

    # ---- presentation ----------------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lex order (highest degree first)."""
        return sorted(self.terms.items(), key=lambda it: (sum(it[0]), it[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for nu, c in self.sorted_terms():
            factors = []
            for k, e in enumerate(nu):
                if e == 1:
                    factors.append(f"x{k}")
                elif e > 1:
                    factors.append(f"x{k}^{e}")
            cs = str(c)
            neg = cs.startswith("-")
            body = cs[1:] if neg else cs
            if factors and body == "1":
                text = "*".join(factors)
            elif factors:
                text = "*".join([body] + factors)
            else:
                text = body
            if not parts:
                parts.append(f"-{text}" if neg else text)
            else:
                parts.append(f" - {text}" if neg else f" + {text}")
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


# ---- spec-level operation surface -------------------------------------


def poly_arith(op: str, a: Polynomial, b):
    """Exact arithmetic dispatch: op is one of 'add', 'mul', 'scale'."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f: Polynomial, k: int) -> Polynomial:
    return f.partial_derivative(k)


def homogeneous_degree(f: Polynomial, weights=None):
    return f.homogeneous_degree(weights)


def poly_from_exponents(nvars: int, data, field=QQ) -> Polynomial:
    """Convenience builder: data maps exponent tuples to ints/Fractions."""
    return Polynomial(field, nvars, {tuple(k): Fraction(v) for k, v in data.items()})
