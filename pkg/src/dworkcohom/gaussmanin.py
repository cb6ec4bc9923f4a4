"""Gauss-Manin connection matrices for one-parameter families F_t = F_0 + t*G.

The connection acts on a cohomology class through a fixed representative
with t-free coefficients: for a top form omega = P dx_0..dx_n the derivative
along t is the class of (dF_t/dt) * omega = G * omega, which is then reduced
back to the chosen basis by Griffiths-Dwork reduction:

    [Q * dF/dx_i  dx] = -[dQ/dx_i  dx]   modulo the image of d + dF^,

applied degree by degree.  At each coefficient degree the reduction solves an
exact Macaulay system whose standard monomials (non-lead monomials of the
Jacobian ideal, graded-lex) form the engine's default cohomology basis; the
degree drops by m at every step, so the loop terminates.

Everything runs over the rational-function field for the symbolic matrix and
over plain rationals for specializations; the two must agree at every
non-discriminant parameter value, which connection_properties_check verifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dwork import Check, Verdict
from .exceptions import BasisError, NonHomogeneousError, NotSmoothError
from .fields import (QQ, QQ_T, IntPoly, RatFunc, poly_div_exact, poly_eval,
                     poly_gcd, poly_mul, poly_str)
from .griffiths import jacobian_hilbert
from .poly import Polynomial, monomial_basis


@dataclass(frozen=True)
class Family:
    """F_t = base + t * perturbation, homogeneous of one degree throughout."""

    base: Polynomial
    perturbation: Polynomial

    def __post_init__(self):
        if self.base.field is not QQ or self.perturbation.field is not QQ:
            raise TypeError("family data must be given over the rationals")
        if self.base.nvars != self.perturbation.nvars:
            raise ValueError("base and perturbation variable counts differ")
        m = self.base.homogeneous_degree()
        if m is None:
            raise NonHomogeneousError("family base must be homogeneous")
        if self.perturbation and self.perturbation.homogeneous_degree() != m:
            raise NonHomogeneousError(
                "perturbation must be homogeneous of the base degree")

    @property
    def nvars(self) -> int:
        return self.base.nvars

    @property
    def degree(self) -> int:
        return self.base.homogeneous_degree()

    def symbolic(self) -> Polynomial:
        """F_t over the rational-function field."""
        lift = lambda c: RatFunc.from_fraction(c)
        f0 = self.base.map_coefficients(lift, QQ_T)
        g = self.perturbation.map_coefficients(lift, QQ_T)
        return f0 + g.scale(QQ_T.gen)

    def at(self, t0) -> Polynomial:
        """F_{t0} over the rationals."""
        t0 = Fraction(t0)
        return self.base + self.perturbation.scale(t0)


class _DegreeSolver:
    """Column echelon of one Macaulay degree with transformation tracking.

    Rows are degree-d monomials in graded-lex order (largest first); pivots
    prefer the largest available monomial, so the non-pivot rows are the
    standard monomials of the Jacobian ideal in this degree.
    """

    def __init__(self, partials, field, nvars, gen_degree, d):
        self.field = field
        self.monomials = monomial_basis(nvars, d)
        self.index = {nu: k for k, nu in enumerate(self.monomials)}
        self.pivots = {}
        src = d - gen_degree
        if src >= 0:
            for i, p in enumerate(partials):
                if not p:
                    continue
                for g in monomial_basis(nvars, src):
                    col = {}
                    for mu, c in p.terms.items():
                        r = self.index[tuple(a + b for a, b in zip(g, mu))]
                        acc = col.get(r)
                        s = c if acc is None else acc + c
                        if s:
                            col[r] = s
                        elif acc is not None:
                            del col[r]
                    self._insert(col, {(i, g): field.one})

    def _reduce(self, col, combo):
        while col:
            r = min(col)
            piv = self.pivots.get(r)
            if piv is None:
                return r, col, combo
            pcol, pcombo = piv
            factor = col[r] / pcol[r]
            for s, w in pcol.items():
                u = col.get(s)
                u = -factor * w if u is None else u - factor * w
                if u:
                    col[s] = u
                else:
                    col.pop(s, None)
            for key, w in pcombo.items():
                u = combo.get(key)
                u = -factor * w if u is None else u - factor * w
                if u:
                    combo[key] = u
                else:
                    combo.pop(key, None)
        return None, col, combo

    def _insert(self, col, combo):
        r, col, combo = self._reduce(col, combo)
        if r is not None:
            self.pivots[r] = (col, combo)

    @property
    def standard_monomials(self):
        return [nu for k, nu in enumerate(self.monomials) if k not in self.pivots]

    def solve(self, part: Polynomial):
        """part = (standard-monomial combination) + sum lambda * g * dF_i.

        Returns (std coords keyed by monomial, combo keyed by (i, g)).
        The non-pivot rows span the cokernel, so this always succeeds.
        """
        col = {self.index[nu]: c for nu, c in part.terms.items()}
        combo = {}
        _, col, combo = self._reduce(col, combo)
        std = {self.monomials[r]: c for r, c in col.items()}
        return std, {k: -v for k, v in combo.items()}


class GriffithsDworkReducer:
    """Reduce top forms P dx_0..dx_n to the standard cohomology basis."""

    def __init__(self, f: Polynomial):
        profile = jacobian_hilbert(f)
        if not profile.smooth:
            raise NotSmoothError(
                "Griffiths-Dwork reduction needs a smooth (generic) member")
        self.f = f
        self.field = f.field
        self.nvars = f.nvars
        self.m = profile.modulus
        self.partials = [f.partial_derivative(k) for k in range(f.nvars)]
        self.top_residue = (-f.nvars) % self.m
        self.std_degrees = [d for d in range(profile.socle + 1)
                            if d % self.m == self.top_residue]
        self._solvers = {}
        self.std_basis = []
        for d in self.std_degrees:
            for nu in self._solver(d).standard_monomials:
                self.std_basis.append((d, nu))
        self.std_index = {key: k for k, key in enumerate(self.std_basis)}

    def _solver(self, d: int) -> _DegreeSolver:
        s = self._solvers.get(d)
        if s is None:
            s = self._solvers[d] = _DegreeSolver(
                self.partials, self.field, self.nvars, self.m - 1, d)
        return s

    def standard_forms(self):
        """The basis as t-free coefficient polynomials x^nu (over QQ)."""
        return [Polynomial.monomial(QQ, self.nvars, nu) for _, nu in self.std_basis]

    def reduce(self, p: Polynomial):
        """Coordinates of the class [p dx] in the standard basis."""
        parts = {}
        for nu, c in p.terms.items():
            d = sum(nu)
            if d % self.m != self.top_residue:
                raise ValueError(
                    f"coefficient degree {d} is not on the top strand")
            parts.setdefault(d, {})[nu] = c
        coords = [self.field.zero] * len(self.std_basis)
        while parts:
            d = max(parts)
            part = Polynomial(self.field, self.nvars, parts.pop(d))
            if not part:
                continue
            std, combo = self._solver(d).solve(part)
            for nu, c in std.items():
                key = (d, nu)
                if key not in self.std_index:
                    raise BasisError(
                        f"residue {Polynomial.monomial(self.field, self.nvars, nu)} "
                        f"in degree {d} lies outside the standard basis")
                coords[self.std_index[key]] = coords[self.std_index[key]] + c
            if d >= self.m:
                correction = {}
                for (i, g), lam in combo.items():
                    if g[i]:
                        dmono = g[:i] + (g[i] - 1,) + g[i + 1:]
                        acc = correction.get(dmono, self.field.zero)
                        correction[dmono] = acc - lam * g[i]
                lower = parts.setdefault(d - self.m, {})
                for nu, c in correction.items():
                    acc = lower.get(nu, self.field.zero)
                    s = acc + c
                    if s:
                        lower[nu] = s
                    else:
                        lower.pop(nu, None)
                if not parts[d - self.m]:
                    del parts[d - self.m]
        return coords


@dataclass(frozen=True)
class ConnectionMatrix:
    """Matrix of the t-derivative action on the chosen top-cohomology basis.

    entries[i][j] is the coefficient of basis[i] in the derivative of
    basis[j]; basis elements are t-free coefficient polynomials of top
    forms.  denominator is the lcm of all entry denominators; its roots
    bound the discriminant set where the matrix degenerates.
    """

    basis: tuple
    entries: tuple
    denominator: IntPoly = (1,)
    discriminant_roots: tuple = ()

    @property
    def size(self) -> int:
        return len(self.basis)

    def entry_strings(self):
        return [[str(e) for e in row] for row in self.entries]

    def specialize(self, t0) -> tuple:
        """Evaluate all entries at t = t0 (raises ZeroDivisionError on a pole)."""
        t0 = Fraction(t0)
        out = []
        for row in self.entries:
            out.append(tuple(e.evaluate(t0) if isinstance(e, RatFunc)
                             else Fraction(e) for e in row))
        return tuple(out)

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)


def _solve_square(u_cols, r_cols, field, k):
    """Solve U M = R for M, given U and R as lists of dense length-k columns."""
    ncols_r = len(r_cols)
    rows = [[u_cols[j][i] for j in range(k)]
            + [r_cols[j][i] for j in range(ncols_r)] for i in range(k)]
    for col in range(k):
        piv = None
        for i in range(col, k):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            raise BasisError("proposed classes are not a cohomology basis")
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [x / pv for x in rows[col]]
        for i in range(k):
            if i != col and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return tuple(tuple(rows[i][k + j] for j in range(ncols_r)) for i in range(k))


def _rational_roots(p: IntPoly):
    """All rational roots of an integer polynomial (for discriminant reports)."""
    roots = set()
    if not p or len(p) == 1:
        return ()
    coeffs = list(p)
    while coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs.pop(0)
    lead, const = coeffs[-1], coeffs[0]

    def divisors(n):
        n = abs(n)
        out = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.add(d)
                out.add(n // d)
            d += 1
        return out

    for num in divisors(const):
        for den in divisors(lead):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if poly_eval(tuple(coeffs), cand) == 0:
                    roots.add(cand)
    return tuple(sorted(roots))


def family_connection_matrix(fam: Family, basis=None) -> ConnectionMatrix:
    """Exact matrix of the action  omega -> [ (dF_t/dt) * omega ]  on a basis
    of the top strand cohomology.

    basis, when given, lists t-free coefficient polynomials over QQ of top
    forms; the default is the engine's standard monomial basis.  The action
    on a t-free representative has no d/dt term, so it reduces to
    multiplication by the perturbation followed by Griffiths-Dwork reduction.
    """
    f_t = fam.symbolic()
    reducer = GriffithsDworkReducer(f_t)
    return _connection_matrix(reducer, fam.perturbation, basis)


def rational_connection_matrix(f0: Polynomial, g: Polynomial,
                               basis=None) -> ConnectionMatrix:
    """Connection matrix computed from scratch over QQ at one family member.

    f0 is the member F_{t0} (a rational polynomial); g is the perturbation.
    Used to verify that specializing the symbolic matrix commutes with
    computing at the specialized member.
    """
    reducer = GriffithsDworkReducer(f0)
    return _connection_matrix(reducer, g, basis)


def _connection_matrix(reducer, perturbation, basis):
    field = reducer.field
    if basis is None:
        forms = reducer.standard_forms()
    else:
        forms = list(basis)
        for p in forms:
            if p.field is not QQ:
                raise BasisError("basis coefficient polynomials must be t-free")
            if p.nvars != reducer.nvars:
                raise BasisError("basis over the wrong variable count")
    if len(forms) != len(reducer.std_basis):
        raise BasisError(
            f"basis size {len(forms)} != cohomology dimension "
            f"{len(reducer.std_basis)}")
    lift = (lambda c: RatFunc.from_fraction(c)) if field is QQ_T else (lambda c: c)
    lifted = [p.map_coefficients(lift, field) for p in forms]
    g_lift = perturbation.map_coefficients(lift, field) if perturbation else None
    u_cols = [reducer.reduce(p) for p in lifted]
    k = len(forms)
    if g_lift is None:
        entries = tuple(tuple(field.zero for _ in range(k)) for _ in range(k))
    else:
        r_cols = [reducer.reduce(g_lift * p) for p in lifted]
        entries = _solve_square(u_cols, r_cols, field, k)
    den = (1,)
    if field is QQ_T:
        for row in entries:
            for e in row:
                den = poly_div_exact(poly_mul(den, e.den), poly_gcd(den, e.den))
    return ConnectionMatrix(tuple(forms), entries, den, _rational_roots(den))


def connection_properties_check(fam: Family, samples, basis=None,
                                shuffle_seed=2) -> Verdict:
    """Consistency harness for the connection action.

    (a) specializing the symbolic matrix at each sample t equals the matrix
        computed from scratch over QQ at F_t with the same basis;
    (b) a constant family gives the zero matrix;
    (c) the matrix transforms by conjugation under an invertible t-free
        change of basis.
    Samples on the discriminant (poles, non-smooth members, degenerate
    bases) are reported as failed checks, never skipped silently.
    """
    sym = family_connection_matrix(fam, basis)
    checks = []
    for t0 in samples:
        t0 = Fraction(t0)
        bad = [r for r in sym.discriminant_roots if r == t0]
        try:
            specialized = sym.specialize(t0)
        except ZeroDivisionError:
            specialized = None
        if specialized is None or bad:
            checks.append(Check(f"t = {t0} avoids the discriminant set",
                                str(t0), "discriminant sample"))
            continue
        try:
            direct = rational_connection_matrix(fam.at(t0), fam.perturbation,
                                                basis=list(sym.basis))
        except NotSmoothError:
            checks.append(Check(f"t = {t0} gives a smooth member",
                                str(t0), "non-smooth specialization"))
            continue
        except BasisError:
            checks.append(Check(f"basis stays independent at t = {t0}",
                                str(t0), "degenerate basis sample"))
            continue
        checks.append(Check(
            f"specialize-then-evaluate equals evaluate-then-compute at t = {t0}",
            specialized, direct.entries))
    constant = family_connection_matrix(
        Family(fam.base, Polynomial.zero(QQ, fam.nvars)), basis)
    checks.append(Check("constant family gives the zero matrix",
                        constant.is_zero(), True))
    k = sym.size
    s = _test_invertible_matrix(k, shuffle_seed)
    new_forms = []
    for j in range(k):
        acc = Polynomial.zero(QQ, fam.nvars)
        for i in range(k):
            if s[i][j]:
                acc = acc + sym.basis[i].scale(s[i][j])
        new_forms.append(acc)
    conj = family_connection_matrix(fam, basis=new_forms)
    sinv = _invert_rational(s)
    expected = _triple_product(sinv, sym.entries, s)
    checks.append(Check("basis change conjugates the matrix",
                        conj.entries, expected))
    return Verdict(tuple(checks))


def _test_invertible_matrix(k, seed):
    """Deterministic invertible rational matrix (unit lower x unit upper)."""
    vals = []
    state = seed * 2654435761 % 2 ** 32 or 1
    for _ in range(2 * k * k):
        state = (1103515245 * state + 12345) % 2 ** 31
        vals.append(Fraction(state % 7 - 3, 1 + state % 3))
    lower = [[Fraction(1) if i == j else (vals.pop() if i > j else Fraction(0))
              for j in range(k)] for i in range(k)]
    upper = [[Fraction(1) if i == j else (vals.pop() if i < j else Fraction(0))
              for j in range(k)] for i in range(k)]
    return [[sum(lower[i][l] * upper[l][j] for l in range(k))
             for j in range(k)] for i in range(k)]


def _invert_rational(s):
    k = len(s)
    aug = [[Fraction(x) for x in row]
           + [Fraction(1 if i == j else 0) for j in range(k)]
           for i, row in enumerate(s)]
    for col in range(k):
        piv = next(i for i in range(col, k) if aug[i][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(k):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [[aug[i][k + j] for j in range(k)] for i in range(k)]


def _triple_product(a, m, b):
    """a @ m @ b with rational a, b and field entries m."""
    k = len(m)
    mb = [[sum(m[i][l] * b[l][j] for l in range(k)) for j in range(k)]
          for i in range(k)]
    return tuple(tuple(sum(mb[l][j] * a[i][l] for l in range(k))
                       for j in range(k)) for i in range(k))


def connection_matrix_strings(mat: ConnectionMatrix):
    """Human-readable entries plus the discriminant denominator."""
    return {
        "basis": [str(p) for p in mat.basis],
        "entries": mat.entry_strings(),
        "denominator": poly_str(mat.denominator),
        "discriminant_roots": [str(r) for r in mat.discriminant_roots],
    }
