"""Run settings shared by the CLI and the scripts."""

from __future__ import annotations

from dataclasses import dataclass

from .groups import max_order
from .rational import max_bits

SCHEMA = "hecke-report/1"
VERSION = "0.1.0"


@dataclass
class Config:
    audit_full: bool = False      # walk all of G x G instead of coset reps
    timings: bool = False         # wall-clock numbers make output non-reproducible, so opt-in
    seed: int = 0
    samples: int = 100
    max_order: int = 0            # 0 means whatever HECKE_MAX_ORDER / the default says
    max_bits: int = 0

    def __post_init__(self):
        if not self.max_order:
            self.max_order = max_order()
        if not self.max_bits:
            self.max_bits = max_bits()
