"""Tunable limits for grids, windows and searches."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace


@dataclass(frozen=True)
class Config:
    # mixed-multiplicity grid: base offset per axis (None means q + 2) and window width
    grid_base: int | None = None
    grid_window: int = 3
    max_doublings: int = 4
    # Hilbert-Samuel stabilization: first power (None means dim + 2) and window width
    hs_t0: int | None = None
    hs_window: int = 3
    degree_cap: int = 60
    # joint-reduction / FC1 verification box: [jr_lo, jr_hi] per axis (None means q + 3)
    jr_lo: int = 1
    jr_hi: int | None = None
    # box certifying constructed candidates: [lo, lo + width] per axis (None means q + 1)
    certify_lo: int | None = None
    certify_width: int = 3
    # randomized candidate search
    budget: int = 20
    seed: int = 0
    coeff_range: int = 5
    # 0 for Q; a prime for F_p (searches only, never final verdicts)
    characteristic: int = 0
    jobs: int = 1
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("grid_window", "hs_window", "degree_cap", "budget", "coeff_range", "jobs", "certify_width"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.max_doublings < 0 or self.jr_lo < 0 or (self.certify_lo is not None and self.certify_lo < 1):
            raise ValueError("caps must be non-negative")
        if self.jr_hi is not None and self.jr_hi < self.jr_lo:
            raise ValueError("jr_hi below jr_lo")

    def with_(self, **kw) -> "Config":
        return replace(self, **kw)

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT = Config()
