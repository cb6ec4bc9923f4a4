"""Cohomology dimensions: finite complexes and stabilized strand complexes.

Two distinct computations live here.

``cohomology_dims`` is the textbook rank formula for an honest finite cochain
complex: dim H^i = dim C^i - rank(d^i) - rank(d^{i-1}).

``stabilized_cohomology`` computes windowed dimensions of a twisted strand
complex (Omega^(j mod m), d + dF^), which is infinite-dimensional before
truncation.  The naive quotient by total degree > N is a complex, but its
degree-0 cohomology always contains the truncated jet of exp(-F), a spurious
class that never dies as N grows.  The windowed dimension avoids this by
staying inside the honest complex:

    dim H^i at window N
        = dim ker(D^i restricted to degree <= N)
        - dim ( D(C^{i-1}_{<=N})  intersected with  C^i_{<=N} )

with no truncation of targets.  Both terms are exact ranks; the second one is
rank(M_{i-1}) - rank(rows of degree > N of M_{i-1}).  These numbers converge
to the true cohomology dimensions, and a stabilization certificate records
three consecutive windows with identical dimension maps.  Stability is
evidence, not proof; reports always carry the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import NilpotenceError
from .fields import QQ
from .forms import (StrandSpec, TruncatedComplex, strand_basis_at_degree,
                    twisted_column, validate_twist_input)
from .matrices import (IntRankAccumulator, SparseMatrix, exact_rank,
                       integerize_column, rank_mod_p, rank_of_columns)
from .poly import Polynomial, mono_degree
from .reports import Certificate, CohomologyReport

__all__ = [
    "SparseMatrix", "exact_rank", "rank_mod_p", "rank_of_columns",
    "ComplexDims", "cohomology_dims", "complex_dims",
    "StabilizationPolicy", "default_policy", "stabilized_cohomology",
]


@dataclass(frozen=True)
class ComplexDims:
    """Per-degree (space dim, rank of outgoing differential, cohomology dim).

    rank_in at degree i is rank_out at degree i-1.  The stored data always
    satisfies coh = space - rank_out - rank_in >= 0 and the Euler identity
    sum (-1)^i coh_i = sum (-1)^i space_i.
    """

    data: tuple  # ((degree, space, rank_out, coh), ...) ascending

    def __post_init__(self):
        prev_out = 0
        for degree, space, out, coh in self.data:
            if coh != space - out - prev_out or coh < 0:
                raise ValueError(
                    f"inconsistent dims at degree {degree}: "
                    f"space={space} out={out} in={prev_out} coh={coh}")
            prev_out = out
        if prev_out != 0:
            raise ValueError("outgoing rank of the top degree must be zero")

    def degrees(self):
        return [d for d, *_ in self.data]

    def space(self, i):
        return dict((d, s) for d, s, _, _ in self.data).get(i, 0)

    def rank_out(self, i):
        return dict((d, r) for d, _, r, _ in self.data).get(i, 0)

    def coh(self, i):
        return dict((d, c) for d, _, _, c in self.data).get(i, 0)

    @property
    def coh_dims(self) -> dict:
        return {d: c for d, _, _, c in self.data}

    def euler_spaces(self):
        return sum((-1) ** d * s for d, s, _, _ in self.data)

    def euler_cohomology(self):
        return sum((-1) ** d * c for d, _, _, c in self.data)


def complex_dims(space_dims, matrices) -> ComplexDims:
    """Dimensions of a finite cochain complex given by exact matrices.

    matrices[i] maps degree i to degree i+1; consecutive matrices must
    compose to zero (raises NilpotenceError otherwise, which signals an
    assembly bug in the caller).
    """
    space_dims = list(space_dims)
    matrices = list(matrices)
    if len(matrices) != len(space_dims) - 1:
        raise ValueError("need one matrix per consecutive pair of degrees")
    for i, m in enumerate(matrices):
        if m.ncols != space_dims[i] or m.nrows != space_dims[i + 1]:
            raise ValueError(f"matrix {i} has shape {m.nrows}x{m.ncols}, "
                             f"expected {space_dims[i + 1]}x{space_dims[i]}")
    for a, b in zip(matrices[1:], matrices[:-1]):
        if not a.compose(b).is_zero():
            raise NilpotenceError("consecutive differentials do not compose to zero")
    ranks = [exact_rank(m) for m in matrices] + [0]
    data = []
    prev = 0
    for i, space in enumerate(space_dims):
        out = ranks[i]
        data.append((i, space, out, space - out - prev))
        prev = out
    return ComplexDims(tuple(data))


def cohomology_dims(c: TruncatedComplex) -> ComplexDims:
    """dim H^i = dim C^i - rank(d^i) - rank(d^{i-1}) for a truncated complex."""
    return complex_dims(c.space_dims, c.matrices)


@dataclass(frozen=True)
class StabilizationPolicy:
    """Escalation schedule for windowed cohomology dimensions."""

    initial_bound: int
    step: int
    max_bound: int

    def __post_init__(self):
        if self.initial_bound < 0:
            raise ValueError("initial_bound must be >= 0")
        if self.step < 1:
            raise ValueError("step must be >= 1")
        if self.max_bound < self.initial_bound:
            raise ValueError("max_bound must be >= initial_bound")


def default_policy(f: Polynomial, spec: StrandSpec) -> StabilizationPolicy:
    """Default window: socle degree of the Jacobian ring plus two escalations.

    For trivial weights and degree-m twist this is
    (n+1)(m-2) + (n+1) + 2m; smooth classes live below the socle degree
    (n+1)(m-2), so the initial window already sees them.
    """
    weights = spec.weights or (1,) * spec.nvars
    if spec.modulus > 1:
        m_eff = spec.modulus
    elif f:
        m_eff = f.total_degree(spec.weights)
    else:
        m_eff = 1
    m_eff = max(m_eff, 1)
    socle = max(sum(m_eff - 2 * w for w in weights), 0)
    initial = socle + sum(weights) + 2 * m_eff
    return StabilizationPolicy(initial, m_eff, initial + 4 * m_eff)


class _WindowEngine:
    """Incremental windowed dimensions for one (F, spec) strand complex.

    Columns of each differential are processed in ascending source total
    degree, so the cumulative rank after finishing degree e equals the exact
    rank of D^i restricted to sources of degree <= e; one sweep serves every
    window bound.  Targets are never truncated.
    """

    def __init__(self, f: Polynomial, spec: StrandSpec):
        validate_twist_input(f, spec)
        if f.field is not QQ:
            raise TypeError("windowed dimensions run over the rational field")
        self.f = f
        self.spec = spec
        self.top = spec.nvars
        self.max_shift = max(
            (mono_degree(mu, spec.weights) for mu in f.terms if any(mu)),
            default=0)
        n = self.top + 1
        self.acc = [IntRankAccumulator() for _ in range(n)]
        self.rows = [dict() for _ in range(n + 1)]
        self.next_deg = [spec.residue] * n
        self.rank_at = [dict() for _ in range(n)]
        self.dims_at_deg = [dict() for _ in range(n)]
        self.dim_cum = [0] * n
        self._band_cache = {}

    def _row_id(self, i: int, key) -> int:
        reg = self.rows[i]
        rid = reg.get(key)
        if rid is None:
            rid = len(reg)
            reg[key] = rid
        return rid

    def _process(self, i: int, bound: int):
        spec, f = self.spec, self.f
        e = self.next_deg[i]
        acc = self.acc[i]
        while e <= bound:
            basis = strand_basis_at_degree(spec, i, e)
            for nu, I in basis:
                col = {}
                for key, c in twisted_column(f, nu, I).items():
                    col[self._row_id(i + 1, key)] = c
                if col:
                    acc.add_column(integerize_column(col))
            self.dim_cum[i] += len(basis)
            self.rank_at[i][e] = acc.rank
            self.dims_at_deg[i][e] = self.dim_cum[i]
            e += spec.modulus
        self.next_deg[i] = e

    def _checkpoint(self, table: dict, bound: int) -> int:
        spec = self.spec
        if bound < spec.residue:
            return 0
        e = bound - (bound - spec.residue) % spec.modulus
        return table.get(e, 0)

    def _band_rank(self, i: int, bound: int) -> int:
        """Rank of D^i columns of degree <= bound on rows of degree > bound."""
        key = (i, bound)
        if key in self._band_cache:
            return self._band_cache[key]
        spec, f = self.spec, self.f
        rank = 0
        if self.max_shift > 0:
            acc = IntRankAccumulator()
            rows = {}
            e = bound - (bound - spec.residue) % spec.modulus \
                if bound >= spec.residue else -1
            while e >= 0 and e > bound - self.max_shift:
                for nu, I in strand_basis_at_degree(spec, i, e):
                    col = {}
                    for tkey, c in twisted_column(f, nu, I).items():
                        if spec.form_degree(*tkey) > bound:
                            rid = rows.setdefault(tkey, len(rows))
                            col[rid] = c
                    if col:
                        acc.add_column(integerize_column(col))
                e -= spec.modulus
            rank = acc.rank
        self._band_cache[key] = rank
        return rank

    def dims_at(self, bound: int) -> dict:
        for i in range(self.top + 1):
            self._process(i, bound)
        dims = {}
        for i in range(self.top + 1):
            kernel = (self._checkpoint(self.dims_at_deg[i], bound)
                      - self._checkpoint(self.rank_at[i], bound))
            if i == 0:
                witnessed = 0
            else:
                witnessed = (self._checkpoint(self.rank_at[i - 1], bound)
                             - self._band_rank(i - 1, bound))
            dims[i] = kernel - witnessed
        return dims


_ENGINES = {}
_REPORTS = {}


def _engine(f: Polynomial, spec: StrandSpec) -> _WindowEngine:
    key = (f, spec)
    eng = _ENGINES.get(key)
    if eng is None:
        eng = _ENGINES[key] = _WindowEngine(f, spec)
    return eng


def stabilized_cohomology(f: Polynomial, spec: StrandSpec,
                          policy: StabilizationPolicy = None) -> CohomologyReport:
    """Windowed cohomology dimensions with a stabilization certificate.

    Dimension maps are computed at policy.initial_bound and escalated by
    policy.step until three consecutive windows agree in every degree, or
    max_bound is hit (reported as an unstabilized certificate, never
    silently accepted).
    """
    if policy is None:
        policy = default_policy(f, spec)
    cache_key = (f, spec, policy)
    cached = _REPORTS.get(cache_key)
    if cached is not None:
        return cached
    engine = _engine(f, spec)
    history = []
    bound = policy.initial_bound
    while True:
        dims = engine.dims_at(bound)
        history.append((bound, tuple(sorted(dims.items()))))
        if len(history) >= 3 and history[-1][1] == history[-2][1] == history[-3][1]:
            cert = Certificate(tuple(b for b, _ in history[-3:]), True,
                               tuple(history))
            break
        if bound + policy.step > policy.max_bound:
            cert = Certificate((), False, tuple(history))
            break
        bound += policy.step
    final = dict(history[-1][1])
    strand = spec.residue if spec.modulus > 1 else None
    desc = f"H(d + dF^) for F = {f}"
    if strand is not None:
        desc += f", strand {spec.residue} mod {spec.modulus}"
    report = CohomologyReport(
        description=desc, nvars=spec.nvars, modulus=spec.modulus,
        dims=final, labels={k: f"H^{k}" for k in final}, strand=strand,
        path="truncation", certificate=cert, weights=spec.weights)
    _REPORTS[cache_key] = report
    return report
