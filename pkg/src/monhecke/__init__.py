"""Exact computations with monodromic Hecke algebroids, endoscopic Weyl groups
and their Kazhdan-Lusztig bases."""

from .laurent import LaurentPoly
from .rootdatum import GCM, RealRoot, RootDatum, WeylElt, build_root_datum, load_datum, named_datum
from .charmod import AbGroup, CoeffHom, MultLocalSystem, act, orbit, parse_char
from .endoscopy import Block, EndoDatum, block_of, blocks, endo_datum, endosimple_generators

__version__ = "0.1.0"
