from .generator import DEFAULT_RANGES, random_case
from .ieee14 import BRANCHES, ieee14_case
from .model import CaseStudy


__all__ = [
    "BRANCHES",
    "CaseStudy",
    "DEFAULT_RANGES",
    "ieee14_case",
    "random_case",
]
