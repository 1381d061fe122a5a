"""Invariant subspaces of harmonic-polynomial products under point groups,
and the resulting independent HGPT coefficients."""

__version__ = "0.1.0"

from . import harmonics, hgpt, invariants, polyalg, symgroups  # noqa: F401
