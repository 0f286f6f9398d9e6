"""Select the compiled monomial kernel when available.

Set ``BRSTFORMS_PURE_PYTHON=1`` to force the fallback.
"""

import importlib
import os


def _load():
    if os.environ.get("BRSTFORMS_PURE_PYTHON", "") not in ("1", "true", "yes"):
        try:
            return "cython", importlib.import_module("._monomial", __package__)
        except ImportError:
            pass
    return "python", importlib.import_module("._monomial_py", __package__)


BACKEND, _impl = _load()
mul_mono = _impl.mul_mono
sort_factors = _impl.sort_factors
contract = _impl.contract

__all__ = ["BACKEND", "contract", "mul_mono", "sort_factors"]
