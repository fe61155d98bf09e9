# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>
__all__ = ["__version__"]
__version__ = "0.1.0"
