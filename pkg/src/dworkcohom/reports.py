"""Result containers shared by the cohomology pipelines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Certificate:
    """Evidence that truncated dimensions have stopped moving.

    bounds are the three consecutive truncation bounds whose dimension maps
    agree (empty and agreed=False when the escalation hit max_bound first).
    history records every (bound, dims) pair that was computed.  Agreement is
    evidence, not proof: the reported dimensions are exact for each bound,
    but stability across three bounds does not certify the untruncated limit.
    """

    bounds: tuple
    agreed: bool
    history: tuple = ()

    def to_json_dict(self):
        return {"bounds": list(self.bounds), "agreed": self.agreed}


@dataclass(frozen=True)
class CohomologyReport:
    """Per-degree cohomology dimensions plus provenance of the computation.

    path is "jacobian" (exact, via the Hilbert function of the Jacobian
    ring) or "truncation" (windowed dimensions with a stabilization
    certificate).  dims maps raw complex degree k to the dimension; labels
    give the normalized name of each degree (local-cohomology or reduced
    Betti indexing) alongside the raw one.
    """

    description: str
    nvars: int
    modulus: int
    dims: dict
    labels: dict = field(default_factory=dict)
    strand: int = None
    path: str = "truncation"
    certificate: Certificate = None
    weights: tuple = None

    @property
    def stabilized(self) -> bool:
        return self.certificate is None or self.certificate.agreed

    def dim(self, k: int) -> int:
        return self.dims.get(k, 0)

    @property
    def top_degree(self) -> int:
        return max((k for k, v in self.dims.items() if v), default=0)

    def total(self) -> int:
        return sum(self.dims.values())

    def dims_list(self):
        return [{"degree": k, "label": self.labels.get(k, f"H^{k}"), "dim": v}
                for k, v in sorted(self.dims.items())]

    def to_json_dict(self):
        out = {
            "description": self.description,
            "nvars": self.nvars,
            "m": self.modulus,
            "strand": self.strand,
            "weights": list(self.weights) if self.weights else None,
            "path": self.path,
            "dims": self.dims_list(),
            "certificate": (self.certificate.to_json_dict()
                            if self.certificate else None),
            "stabilized": self.stabilized,
        }
        return out
