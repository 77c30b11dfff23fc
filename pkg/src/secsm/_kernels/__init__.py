"""Hot numeric kernels with a compiled core and a pure-numpy fallback.

The compiled extension is optional: when it failed to build (or the
package runs from a source tree without compilation) the numpy
implementation is selected at import. BACKEND names the active one.
"""

from . import _mi_numpy

try:
    from . import _mi_cython as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _mi_numpy
    BACKEND = "numpy"

mi_inner_mean = _impl.mi_inner_mean
mi_inner_mean_numpy = _mi_numpy.mi_inner_mean

__all__ = ["BACKEND", "mi_inner_mean", "mi_inner_mean_numpy"]
