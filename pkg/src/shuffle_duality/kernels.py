"""Backend selection for the sparse polynomial kernels.

The compiled ``_ckernels`` module is used when it was built; otherwise, or
when ``SHUFFLE_DUALITY_PURE_PYTHON=1`` is set, the pure-Python module is used.
"""
import os

if os.environ.get("SHUFFLE_DUALITY_PURE_PYTHON") == "1":
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
mul = _impl.mul
add_scaled_into = _impl.add_scaled_into
permute_add_into = _impl.permute_add_into
divide_linear = _impl.divide_linear
substitute_vpow = _impl.substitute_vpow
