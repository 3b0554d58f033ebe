# Import all models for easy access
from .superalgebra import *
from .symmetric import *
from .divisor import *
from .curve import *
from .documents import *

# Version info
__version__ = "1.0.0"
__description__ = "Exact supercommutative algebra, symmetric products and superdivisors"
