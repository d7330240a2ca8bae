"""Exact Hecke algebras of finite group/subgroup pairs."""

from .algebra import HeckeElement, convolve, sigma, star, sharp
from .analysis import analyze_pair, is_protonormal, is_subnormal, normal_closure
from .config import VERSION as __version__
from .groups import (GroupTable, SubgroupRef, build_group, coset_space, generate_subgroup,
                     rep_family)
from .pair import HeckePair
from .rational import Rational

__all__ = ["HeckeElement", "convolve", "sigma", "star", "sharp", "analyze_pair",
           "is_protonormal", "is_subnormal", "normal_closure", "GroupTable", "SubgroupRef",
           "build_group", "coset_space", "generate_subgroup", "rep_family", "HeckePair",
           "Rational", "__version__"]
