"""Top-level pipelines: comparison identities as exact dimension checks.

Each pipeline produces a CohomologyReport whose degrees carry two names: the
raw complex degree k of H^k(strand, d + dF^) and the normalized label it
computes, e.g.

* strand j = 0 of degree-m homogeneous F in n+1 variables:
  H^k = primitive local cohomology H^k_Y(P^n)^prim along Y = V(F);
* the full complex: H^k = reduced Betti number of the affine fiber
  U = F^{-1}(1), shifted by one;
* the complete-intersection Koszul complex on scalars[x, y]:
  H^(j+2r) = de Rham Betti number of Y = V(f_1..f_r) in degree j.

Smooth plain-homogeneous inputs are answered through the Jacobian ring
(path "jacobian", exact); everything else goes through windowed truncation
with a stabilization certificate (path "truncation").
compare_smooth_paths runs both routes and demands exact agreement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import NonHomogeneousError, NotSmoothError
from .fields import QQ
from .forms import StrandSpec, full_complex_spec
from .griffiths import jacobian_hilbert, primitive_hodge_numbers, strand_top_dims
from .linalg import StabilizationPolicy, stabilized_cohomology
from .poly import Polynomial
from .reports import CohomologyReport


@dataclass(frozen=True)
class Check:
    """One verified dimension identity: lhs and rhs computed independently."""

    name: str
    lhs: object
    rhs: object

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json_dict(self):
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "pass": self.passed}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a multi-sided identity check, with supporting reports."""

    checks: tuple
    reports: tuple = ()

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.passed]


def _prim_labels(nvars: int) -> dict:
    n = nvars - 1
    return {k: f"H^{k}_Y(P^{n})^prim" for k in range(nvars + 1)}


def _affine_labels(nvars: int) -> dict:
    return {k: f"H~^{k - 1}(U)" for k in range(nvars + 1)}


def _smooth_profile(f: Polynomial, weights):
    """Jacobian profile when the fast path applies, else None."""
    if weights is not None or f.field is not QQ or not f:
        return None
    m = f.homogeneous_degree()
    if m is None or m < 2:
        return None
    profile = jacobian_hilbert(f)
    return profile if profile.smooth else None


def _concentrated_report(f, nvars, m, dims_top, strand, weights, description):
    dims = {k: 0 for k in range(nvars + 1)}
    dims[nvars] = dims_top
    return CohomologyReport(
        description=description, nvars=nvars, modulus=m, dims=dims,
        labels={k: f"H^{k}" for k in dims}, strand=strand, path="jacobian",
        certificate=None, weights=weights)


def _strand_report(f: Polynomial, residue: int, policy=None,
                   weights=None) -> CohomologyReport:
    """Dimensions of one strand, by the fastest valid route."""
    m = f.homogeneous_degree(weights)
    if m is None:
        raise NonHomogeneousError("strand dimensions need a homogeneous input")
    profile = _smooth_profile(f, weights)
    if profile is not None and policy is None:
        return _concentrated_report(
            f, f.nvars, m, strand_top_dims(profile, residue), residue, weights,
            f"strand {residue} mod {m} twisted cohomology of F = {f}")
    spec = StrandSpec(f.nvars, max(m, 1), residue % max(m, 1), weights)
    return stabilized_cohomology(f, spec, policy)


def _full_report(f: Polynomial, policy=None, weights=None) -> CohomologyReport:
    """Dimensions of the full twisted complex, by the fastest valid route."""
    profile = _smooth_profile(f, weights)
    if profile is not None and policy is None:
        return _concentrated_report(
            f, f.nvars, profile.modulus, profile.milnor, None, weights,
            f"full twisted cohomology of F = {f}")
    if f and f.homogeneous_degree(weights) is None and policy is None:
        raise NonHomogeneousError(
            "inhomogeneous input: supply an explicit truncation policy")
    return stabilized_cohomology(f, full_complex_spec(f.nvars, weights), policy)


def _relabel(report: CohomologyReport, labels: dict, description: str):
    return CohomologyReport(
        description=description, nvars=report.nvars, modulus=report.modulus,
        dims=report.dims, labels=labels, strand=report.strand,
        path=report.path, certificate=report.certificate,
        weights=report.weights)


def strand_cohomology(f: Polynomial, residue: int,
                      policy: StabilizationPolicy = None,
                      weights=None) -> CohomologyReport:
    """Dimensions of a single strand (residue mod m) of the twisted complex."""
    return _strand_report(f, residue, policy, weights)


def primitive_dwork_cohomology(f: Polynomial,
                               policy: StabilizationPolicy = None) -> CohomologyReport:
    """H^k of the strand-0 twisted complex = H^k_Y(P^n)^prim for Y = V(F).

    Smooth F goes through the Jacobian ring (exact); singular F goes through
    truncation and the report carries the stabilization certificate.
    """
    if not f:
        raise ValueError("zero polynomial does not define a hypersurface")
    if f.nvars < 2:
        raise ValueError("need at least 2 variables (a hypersurface in P^n, n >= 1)")
    if f.homogeneous_degree() is None:
        raise NonHomogeneousError("the projective pipeline needs homogeneous input")
    rep = _strand_report(f, 0, policy)
    return _relabel(rep, _prim_labels(f.nvars),
                    f"primitive local cohomology along Y = V({f}) in P^{f.nvars - 1}")


def affine_twisted_cohomology(g: Polynomial, weights=None,
                              policy: StabilizationPolicy = None) -> CohomologyReport:
    """Full-complex dims: H^k(d + dG^) = reduced H^(k-1) of U = G^{-1}(1)."""
    if not g or g.homogeneous_degree() == 0:
        raise ValueError("affine twisted cohomology needs a nonconstant polynomial")
    rep = _full_report(g, policy, weights)
    return _relabel(rep, _affine_labels(g.nvars),
                    f"reduced cohomology of U = ({g} = 1), shifted by one")


def strand_decomposition(f: Polynomial, policy: StabilizationPolicy = None,
                         weights=None):
    """Per-strand dimension reports, j = 0..m-1; their degreewise sum is
    verified against an independently computed full-complex report."""
    m = f.homogeneous_degree(weights) if f else None
    if m is None:
        raise NonHomogeneousError("strand decomposition needs a homogeneous input")
    m = max(m, 1)
    reports = [_strand_report(f, j, policy, weights) for j in range(m)]
    full = _full_report(f, policy, weights)
    for k in range(f.nvars + 1):
        total = sum(rep.dim(k) for rep in reports)
        if total != full.dim(k):
            raise RuntimeError(
                f"strand sum {total} != full-complex dimension {full.dim(k)} "
                f"in degree {k}; this indicates an assembly bug")
    return reports


def _suspend(f: Polynomial) -> Polynomial:
    """F + x_new^m in one more variable."""
    m = f.homogeneous_degree()
    ext = f.extend(f.nvars + 1)
    return ext + Polynomial.variable(f.field, f.nvars + 1, f.nvars) ** m


def thom_sebastiani_check(f: Polynomial,
                          policy: StabilizationPolicy = None) -> Verdict:
    """Kunneth factorization under F -> F + x_new^m, as dimension identities.

    Checks (a) degreewise: dim H^a(F~) = sum_{b+c=a} dim H^b(F) dim H^c of
    the one-variable x^m complex, and (b) the strand identity: the strand-0
    dims of F~ in degree i+2 equal the summed strand-j dims of F (0<j<m) in
    degree i+1.  All sides are computed in-engine.
    """
    m = f.homogeneous_degree()
    if m is None or m < 2:
        raise NonHomogeneousError("need a homogeneous input of degree >= 2")
    ftilde = _suspend(f)
    full_f = _full_report(f, policy)
    one_var = _full_report(Polynomial.variable(f.field, 1, 0) ** m)
    full_ft = _full_report(ftilde, policy)
    checks = []
    for a in range(f.nvars + 2):
        rhs = sum(full_f.dim(b) * one_var.dim(a - b) for b in range(a + 1))
        checks.append(Check(f"Kunneth: dim H^{a}(F + x^{m}) = "
                            f"sum dim H^b(F) * dim H^c(x^{m})",
                            full_ft.dim(a), rhs))
    strand_ft0 = _strand_report(ftilde, 0, policy)
    strands_f = [_strand_report(f, j, policy) for j in range(1, m)]
    for k in range(f.nvars + 2):
        rhs = sum(rep.dim(k - 1) for rep in strands_f)
        checks.append(Check(
            f"strand identity: prim dim {k} of the suspension = "
            f"sum over strands 1..{m - 1} of dim {k - 1}",
            strand_ft0.dim(k), rhs))
    return Verdict(tuple(checks),
                   (full_f, one_var, full_ft, strand_ft0, *strands_f))


def suspension_check(f: Polynomial,
                     policy: StabilizationPolicy = None) -> Verdict:
    """Additivity dim H~^i(U) = prim^(i+2)(Y~) + prim^(i+1)(Y), all in-engine.

    U is the affine fiber of F, Y~ and Y the projective hypersurfaces of
    F + x_new^m and F; the three sides come from independent computations
    (full complex, strand 0 of the suspension, strand 0 of F).
    """
    m = f.homogeneous_degree()
    if m is None or m < 2:
        raise NonHomogeneousError("need a homogeneous input of degree >= 2")
    ftilde = _suspend(f)
    u_side = _full_report(f, policy)
    prim_f = _strand_report(f, 0, policy)
    prim_ft = _strand_report(ftilde, 0, policy)
    checks = []
    for i in range(-1, f.nvars + 1):
        checks.append(Check(
            f"dim H~^{i}(U) = prim^{i + 2}(suspension) + prim^{i + 1}(F)",
            u_side.dim(i + 1), prim_ft.dim(i + 2) + prim_f.dim(i + 1)))
    return Verdict(tuple(checks), (u_side, prim_ft, prim_f))


def ci_dwork_koszul(fs, bound: int, step: int = None) -> CohomologyReport:
    """Koszul complex K(scalars[x,y]; d/dx_j + sum_i y_i df_i/dx_j, d/dy_i + f_i).

    This is the full twisted complex on A^(n+r) with F = sum y_i f_i; for a
    smooth complete intersection Y = V(f_1..f_r) of codimension r the
    dimension at degree j + 2r equals the de Rham Betti number of Y in
    degree j.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one defining polynomial")
    n = fs[0].nvars
    if any(p.nvars != n for p in fs):
        raise ValueError("defining polynomials must share one variable count")
    r = len(fs)
    field = fs[0].field
    total = Polynomial.zero(field, n + r)
    for i, p in enumerate(fs):
        total = total + Polynomial.variable(field, n + r, n + i) * p.extend(n + r)
    if step is None:
        step = max(total.total_degree(), 1) if total else 1
    policy = StabilizationPolicy(bound, step, bound + 4 * step)
    rep = stabilized_cohomology(total, full_complex_spec(n + r), policy)
    labels = {k: (f"H^{k - 2 * r}_dR(Y)" if k >= 2 * r else f"H^{k}")
              for k in rep.dims}
    return _relabel(rep, labels,
                    f"Koszul complex of ({', '.join(str(p) for p in fs)}) "
                    f"with {r} dual variables; degrees shift by 2r = {2 * r}")


def fourier_lemma_check(r: int, bound: int) -> Verdict:
    """The 2r-operator Koszul complex K(scalars[y, y*]; d/dy_i + y*_i, d/dy*_i + y_i)
    has one-dimensional cohomology concentrated in degree 2r."""
    if r < 1:
        raise ValueError("r must be >= 1")
    field = QQ
    total = Polynomial.zero(field, 2 * r)
    for i in range(r):
        total = total + (Polynomial.variable(field, 2 * r, i)
                         * Polynomial.variable(field, 2 * r, r + i))
    policy = StabilizationPolicy(bound, 2, bound + 8)
    rep = stabilized_cohomology(total, full_complex_spec(2 * r), policy)
    checks = (
        Check(f"dim H^{2 * r} = 1", rep.dim(2 * r), 1),
        Check("all other degrees vanish",
              sum(v for k, v in rep.dims.items() if k != 2 * r), 0),
        Check("stabilization certificate", rep.stabilized, True),
    )
    return Verdict(checks, (rep,))


def compare_smooth_paths(f: Polynomial,
                         policy: StabilizationPolicy = None) -> Verdict:
    """Jacobian-path dimensions vs truncation-path dimensions, degreewise.

    The summed primitive Hodge numbers must equal the stabilized strand-0
    top dimension exactly, and every lower degree must vanish on both paths.
    """
    profile = jacobian_hilbert(f)
    if not profile.smooth:
        raise NotSmoothError("two-path comparison is for smooth hypersurfaces")
    hodge = primitive_hodge_numbers(f)
    total = sum(h for _, h in hodge)
    spec = StrandSpec(f.nvars, profile.modulus, 0)
    trunc = stabilized_cohomology(f, spec, policy)
    checks = [Check("stabilization certificate", trunc.stabilized, True),
              Check(f"top degree {f.nvars}: sum of primitive Hodge numbers "
                    f"= truncated strand-0 dimension",
                    total, trunc.dim(f.nvars))]
    for k in range(f.nvars):
        checks.append(Check(f"degree {k} vanishes on the truncation path",
                            trunc.dim(k), 0))
    return Verdict(tuple(checks), (trunc,))
