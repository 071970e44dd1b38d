"""Exact verification tools for the characters, fermionic sums and auxiliary
polynomial identities of the N=1 super-triplet vertex algebra family."""

from .qseries import QSeries, VerificationReport

__all__ = ["QSeries", "VerificationReport"]
__version__ = "0.1.0"
