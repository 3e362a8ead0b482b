"""
The cli_io package provides the command line interface and the record writers
that emit the datasets behind figures and tables.
"""

from .emitter import *
from .datasets import *
from .commands import *
from .cli import *
