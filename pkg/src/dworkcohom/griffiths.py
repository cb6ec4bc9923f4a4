"""Jacobian-ring pipeline for smooth projective hypersurfaces.

For homogeneous F of degree m in x_0..x_n the Jacobian ring is
R = scalars[x] / (dF/dx_0, ..., dF/dx_n).  When V(F) is smooth the partials
form a regular sequence, R is finite-dimensional with socle degree
sigma = (n+1)(m-2), its Hilbert function is Gorenstein-symmetric, and

* the Milnor number is mu = sum h_d = (m-1)^(n+1);
* the primitive Hodge numbers of the middle cohomology of Y = V(F) in P^n
  are h_q = h_{qm-(n+1)} for q = 1..n;
* the top cohomology of the strand-j twisted complex has dimension
  sum of h_d over d = j - (n+1) (mod m), with nothing below the top.

Everything is computed from exact ranks of Macaulay multiplication matrices,
degree by degree.  Smoothness itself is certified by the vanishing of the
Hilbert function at sigma+1 and sigma+2: for an ideal generated in degree
m-1 < sigma+1 this forces vanishing in all higher degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .exceptions import NonHomogeneousError, NotSmoothError
from .forms import StrandSpec, strand_basis, strand_basis_at_degree, validate_twist_input
from .linalg import ComplexDims
from .matrices import IntRankAccumulator, integerize_column, rank_of_columns
from .poly import Polynomial, mono_mul, monomial_basis


@dataclass(frozen=True)
class JacobianProfile:
    """Hilbert data of the Jacobian ring of a homogeneous polynomial.

    hilbert[d] is dim R_d for d = 0..socle+2 (the two trailing entries are
    the smoothness check); milnor is the total dimension when smooth, else
    None.
    """

    modulus: int
    nvars: int
    hilbert: tuple
    socle: int
    smooth: bool
    milnor: int = None

    def h(self, d: int) -> int:
        if 0 <= d < len(self.hilbert):
            return self.hilbert[d]
        if d < 0 or self.smooth:
            return 0
        raise NotSmoothError(
            f"Hilbert value at degree {d} not computed for a non-smooth input")


def macaulay_rank(partials, nvars: int, gen_degree: int, d: int) -> int:
    """Rank of (g_0..g_n) -> sum g_i * dF/dx_i landing in degree d.

    partials are the generators (each homogeneous of gen_degree or zero);
    the g_i run over all monomials of degree d - gen_degree.
    """
    src = d - gen_degree
    if src < 0:
        return 0
    rows = {nu: k for k, nu in enumerate(monomial_basis(nvars, d))}
    columns = []
    for p in partials:
        if not p:
            continue
        for g in monomial_basis(nvars, src):
            col = {}
            for mu, c in p.terms.items():
                r = rows[mono_mul(g, mu)]
                acc = col.get(r)
                s = c if acc is None else acc + c
                if s:
                    col[r] = s
                elif acc is not None:
                    del col[r]
            if col:
                columns.append(col)
    return rank_of_columns(columns)


def jacobian_hilbert(f: Polynomial) -> JacobianProfile:
    """Hilbert function of R = scalars[x]/J(F), with the smooth flag.

    Works over both scalar fields; ranks over the rational-function field
    certify smoothness at generic parameter values.
    """
    if not f:
        raise ValueError("zero polynomial has no Jacobian ring")
    m = f.homogeneous_degree()
    if m is None:
        raise NonHomogeneousError("Jacobian profile needs a homogeneous input")
    if m < 2:
        raise ValueError("Jacobian profile needs degree >= 2")
    nvars = f.nvars
    partials = [f.partial_derivative(k) for k in range(nvars)]
    socle = nvars * (m - 2)
    hilbert = []
    for d in range(socle + 3):
        hilbert.append(comb(d + nvars - 1, nvars - 1)
                       - macaulay_rank(partials, nvars, m - 1, d))
    smooth = hilbert[socle + 1] == 0 and hilbert[socle + 2] == 0
    milnor = sum(hilbert) if smooth else None
    return JacobianProfile(m, nvars, tuple(hilbert), socle, smooth, milnor)


def milnor_number(f: Polynomial) -> int:
    """dim of the Milnor algebra; equals (m-1)^(n+1) for smooth inputs."""
    profile = jacobian_hilbert(f)
    if not profile.smooth:
        raise NotSmoothError(
            "Jacobian ring is not finite-dimensional; use the truncation path")
    return profile.milnor


def primitive_hodge_numbers(f: Polynomial):
    """Graded dimensions h_q = h_{qm-(n+1)} of primitive middle cohomology.

    Returns [(q, h_q) for q = 1..n]; entries with qm-(n+1) outside the
    Hilbert range are 0.
    """
    profile = jacobian_hilbert(f)
    if not profile.smooth:
        raise NotSmoothError("primitive Hodge numbers need a smooth hypersurface")
    n = profile.nvars - 1
    m = profile.modulus
    return [(q, profile.h(q * m - (n + 1))) for q in range(1, n + 1)]


def strand_top_dims(profile: JacobianProfile, residue: int) -> int:
    """Top twisted-cohomology dimension of strand residue, from the profile.

    A top form x^nu dx_0..dx_n of coefficient degree d lies on strand
    (d + n + 1) mod m, so the strand mass is the Hilbert sum over
    d = residue - (n+1) (mod m).
    """
    if not profile.smooth:
        raise NotSmoothError("strand dimensions from the profile need a smooth input")
    m = profile.modulus
    want = (residue - profile.nvars) % m
    return sum(h for d, h in enumerate(profile.hilbert) if d % m == want)


def _df_column(f: Polynomial, nu, I) -> dict:
    """Column of dF^ alone on the monomial form x^nu dx_I."""
    from .forms import insert_sign
    col = {}
    for mu, c in f.terms.items():
        for k, ek in enumerate(mu):
            if not ek or k in I:
                continue
            sign, K = insert_sign(k, I)
            tnu = tuple(a + b for a, b in zip(nu, mu))
            tnu = tnu[:k] + (tnu[k] - 1,) + tnu[k + 1:]
            v = c * ek if sign > 0 else -(c * ek)
            key = (tnu, K)
            acc = col.get(key, 0)
            s = acc + v
            if s:
                col[key] = s
            else:
                col.pop(key, None)
    return col


def dF_only_cohomology(f: Polynomial, spec: StrandSpec, bound: int) -> ComplexDims:
    """Cohomology of the associated-graded complex (strand, dF^ only).

    dF^ is homogeneous of degree +m, so the complex splits into finite
    graded Koszul pieces  V^0_tau -> V^1_{tau+m} -> ... -> V^(n+1)_{tau+(n+1)m}.
    Every piece whose lowest nonempty space has total degree <= bound is
    included whole; the result is an honest finite complex, exact in
    sub-top degrees whenever the partials form a regular sequence.
    """
    validate_twist_input(f, spec)
    nvars = spec.nvars
    if not f:
        data = []
        for i in range(nvars + 1):
            space = len(strand_basis(spec, i, bound))
            data.append((i, space, 0, space))
        return ComplexDims(tuple(data))
    m = f.homogeneous_degree(spec.weights)
    if m is None:
        raise NonHomogeneousError("dF-only grading needs a homogeneous input")
    space = [0] * (nvars + 1)
    out = [0] * (nvars + 1)
    for tau in range(-nvars * m, bound + 1):
        if spec.modulus > 1 and tau % spec.modulus != spec.residue:
            continue
        bases = {}
        for i in range(nvars + 1):
            e = tau + i * m
            if e >= 0:
                b = strand_basis_at_degree(spec, i, e)
                if b:
                    bases[i] = b
        if not bases:
            continue
        if min(tau + i * m for i in bases) > bound:
            continue
        for i in range(nvars + 1):
            if i not in bases:
                continue
            space[i] += len(bases[i])
            if i + 1 not in bases:
                continue
            rows = {key: k for k, key in enumerate(bases[i + 1])}
            acc = IntRankAccumulator()
            for nu, I in bases[i]:
                col = {rows[key]: c for key, c in _df_column(f, nu, I).items()}
                if col:
                    acc.add_column(integerize_column(col))
            out[i] += acc.rank
    data = []
    prev = 0
    for i in range(nvars + 1):
        data.append((i, space[i], out[i], space[i] - out[i] - prev))
        prev = out[i]
    return ComplexDims(tuple(data))
