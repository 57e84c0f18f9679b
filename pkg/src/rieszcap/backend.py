"""Selects the compiled kernels when the extension is built, numpy otherwise.

>>> from rieszcap import backend
>>> backend.name() in ("compiled", "python")
True

:func:`use` switches backends at runtime (tests and the benchmark compare
both); :func:`available` lists what can be selected.
"""

import contextlib

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

_active = _ckernels if _ckernels is not None else _pykernels


def available():
    return tuple(_BACKENDS)


def name():
    return _active.NAME


def set_backend(which):
    global _active
    try:
        _active = _BACKENDS[which]
    except KeyError:
        raise ValueError(f"backend {which!r} is not available; have {available()}") from None


@contextlib.contextmanager
def use(which):
    previous = name()
    set_backend(which)
    try:
        yield
    finally:
        set_backend(previous)


def pairwise_distances(x):
    return _active.pairwise_distances(x)


def kernel_matrix(dist, p, diag):
    return _active.kernel_matrix(dist, float(p), diag)


def frank_wolfe(kmat, w0, maximize, max_iters, tol, refresh, record=False):
    return _active.frank_wolfe(kmat, w0, bool(maximize), int(max_iters), float(tol), int(refresh), bool(record))
