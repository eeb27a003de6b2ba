"""Shared run configuration for the analysis pipeline and the CLI."""

from dataclasses import dataclass


@dataclass
class RunConfig:
    """Bounds and knobs shared by chains, searches and sampling.

    All chain computations are heuristically stabilized: a chain stops
    after `window` consecutive equality comparisons or at `e_max`, and
    every report carries the resulting status.
    """

    e_max: int = 6
    window: int = 2
    t_max: int = 8
    socle_t_max: int = 3
    combo_cap: int = 256
    deg_bound: int = 12
    seed: int = 0
    cache_dir: str = None
    json: bool = False

    def __post_init__(self):
        for name in ("e_max", "window", "t_max", "socle_t_max", "combo_cap", "deg_bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
