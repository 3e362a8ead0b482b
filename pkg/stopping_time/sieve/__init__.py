"""
This package currently only consists of one public module: sieve
"""

from .sieve import *
