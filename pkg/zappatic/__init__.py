"""
Galois cover verification toolkit for the R_{n+1} u R_{n+1} degenerations
"""
from zappatic.coset_engine import CosetEngine, coset_enumerate, group_order, verify_simply_connected
from zappatic.models.degeneration import Degeneration
from zappatic.models.presentation import Generator, Presentation, Word
from zappatic.utils.family import build_family
from zappatic.utils.relators import assemble_g1

__version__ = '1.0.0'
