"""Numeric defaults shared by every module and echoed into CLI reports.

The environment variable named by ``TOL_ENV_VAR`` overrides the default
``separation_tol``, the tolerance used wherever a verdict falls back to
numeric comparison of critical values.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, replace

TOL_ENV_VAR = "VALDIST_TOL"


@dataclass(frozen=True)
class Config:
    root_tol: float = 1e-10          # residual bound for numeric roots
    root_max_iter: int = 200         # Durand-Kerner steps per squarefree factor
    separation_tol: float = 1e-9     # numeric critical-value separation
    quad_target: float = 1e-8        # absolute target per proximity integral
    quad_budget: int = 2**16         # max subintervals per integral
    perturb: float = 1e-6            # relative radius nudge off singular circles
    on_circle_rtol: float = 1e-9     # a point closer than this is "on" the circle

    def to_dict(self) -> dict:
        return asdict(self)

    def with_overrides(self, **kw) -> "Config":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def from_env() -> Config:
    """Defaults with the environment override applied (read at call time)."""
    cfg = Config()
    raw = os.environ.get(TOL_ENV_VAR)
    if raw:
        cfg = replace(cfg, separation_tol=float(raw))
    return cfg


DEFAULTS = from_env()
