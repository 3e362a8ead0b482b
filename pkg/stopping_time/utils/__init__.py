"""
A package to collect assorted python utility functions and classes.
"""

from .parallel import *
from .registering_abc import *
from .test_utils import *
