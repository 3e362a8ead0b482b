"""
This package currently only consists of one public module: alpha_sequences
"""

from .alpha_sequences import *
