"""nervelab: exact-arithmetic simplicial homology, local statistics, and
randomized net/nerve constructions on finite metric measure spaces."""

from .errors import ContractError, FormatError

__version__ = "0.1.0"

__all__ = ["ContractError", "FormatError", "__version__"]
