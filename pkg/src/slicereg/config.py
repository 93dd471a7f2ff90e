"""Single flat configuration record: tolerances, seeds and sample counts.

Values can be overridden by environment variables ``SLICEREG_<FIELD>``
(upper case) and, in the CLI, by flags.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, fields

ENV_PREFIX = "SLICEREG_"


@dataclass(frozen=True)
class Config:
    # semantic comparisons ("is this zero / equal")
    eps_eq: float = 1e-9
    # algebraic identities in double precision
    eps_strict: float = 1e-12
    # smallest norm accepted by quaternion inversion
    eps_inv: float = 1e-300
    # residual bound for reported zeros, relative to scale(f, |q|)
    zero_tol: float = 1e-8
    # how far -b c^-1 may sit from the unit sphere and still count as a unit
    unit_tol: float = 1e-6
    # dedup distance for sphere parameters (x, y)
    dedup_tol: float = 1e-7
    # relative |c| below which a sphere is called degenerate
    degenerate_tol: float = 1e-9
    # identity checks skip points with |f^s(q)| < guard_band * scale(f,|q|)^2
    guard_band: float = 1e-6
    # interior minima must satisfy |f| <= min_modulus_tol * scale
    min_modulus_tol: float = 1e-6
    # central-difference step factor: h = fd_step * (1 + |q|)
    fd_step: float = 1e-6
    # open mapping: probe solved when |f(q) - p| < coverage_tol * scale
    coverage_tol: float = 1e-8
    # counterexample witness: K-component bound and L_K landing tolerance
    witness_tol: float = 1e-9
    seed: int = 42
    samples: int = 2000
    probes: int = 200
    epsilon: float = 0.01
    starts: int = 8
    max_iter: int = 200

    def replace(self, **changes) -> "Config":
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_env(cls, environ=None) -> "Config":
        environ = os.environ if environ is None else environ
        changes = {}
        for f in fields(cls):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            try:
                changes[f.name] = int(raw) if f.type in ("int", int) else float(raw)
            except ValueError as exc:
                raise ValueError(f"{ENV_PREFIX}{f.name.upper()}: cannot parse {raw!r}") from exc
        return cls(**changes)


DEFAULT = Config()
