"""Local-global solubility toolkit for diagonal Thue and Fermat equations.

Submodules:
  arith        exact integer / modular primitives
  localsolve   real and p-adic solubility with replayable certificates
  families     prime pairs and triples with certified everywhere-local solubility
  globalsearch bounded integer solution search, coefficient lattices, abc quality
  census       density measurements (locally vs globally soluble counts)
  cli          command-line frontend
"""

from ._version import __version__
from .localsolve import (
    FermatEquation,
    HenselWitness,
    LocalVerdict,
    SolubilityCertificate,
    ThueEquation,
    certify,
    fermat_local,
    hensel_witness_valid,
    prime_checklist,
    real_soluble,
    thue_local,
)

__all__ = [
    "__version__",
    "ThueEquation",
    "FermatEquation",
    "HenselWitness",
    "LocalVerdict",
    "SolubilityCertificate",
    "certify",
    "thue_local",
    "fermat_local",
    "hensel_witness_valid",
    "prime_checklist",
    "real_soluble",
]
