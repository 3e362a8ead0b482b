"""
This package currently only consists of one public module: formula
"""

from .formula import *
