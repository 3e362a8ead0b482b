"""
The verifier package runs batch verification campaigns of the stopping-time formula.
"""

from .histogram import *
from .sampling import *
from .campaign import *
from .checkpoint import *
from .verifier import *
