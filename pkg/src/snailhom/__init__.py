"""Exact homological algebra with nullhomotopies: snail sequences over Z, Q and F_p."""

from .ring import GF, QQ, ZZ, Ring
from .matrix import ExactMatrix
from .modules import FpModule, ModMap

__version__ = "0.1.0"

__all__ = ["Ring", "ZZ", "QQ", "GF", "ExactMatrix", "FpModule", "ModMap"]
