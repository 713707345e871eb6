"""Labeled interlace polynomials, their specializations, and Euler-system interpretations."""

from .graph import LabeledGraph, labeled_local_complement, labeled_pivot
from .interlace import qlambda, q2, qlambda_bruteforce, qlambda_recursive, qn, q_two_variable, avdh, courcelle
from .poly import MPoly
from .fourreg import EulerSystem, from_dow, interlacement, pi_generating_function

__version__ = "0.1.0"
