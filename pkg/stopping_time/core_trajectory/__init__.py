"""
This package currently only consists of one public module: trajectory
"""

from .trajectory import *
