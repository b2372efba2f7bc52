"""Kernel backend selection.

The compiled extension is preferred; ``NUCLEUS_BACKEND=python`` forces the
pure-Python fallback, and a missing or broken extension falls back silently
(with a log line at debug level).
"""

import importlib
import logging
import os

from . import _pykernels

log = logging.getLogger(__name__)


def _load(name=None):
    name = (name or os.environ.get("NUCLEUS_BACKEND", "auto")).lower()
    if name == "python":
        return _pykernels
    try:
        return importlib.import_module("._kernels", __package__)
    except ImportError as exc:
        if name == "cython":
            raise
        log.debug("compiled kernels unavailable (%s); using pure Python", exc)
        return _pykernels


kernels = _load()


def get(name=None):
    """Return the kernel module for ``name`` ("cython", "python") or the active one."""
    if name is None:
        return kernels
    return _load(name)


def available():
    names = ["python"]
    try:
        importlib.import_module("._kernels", __package__)
    except ImportError:
        return names
    return ["cython"] + names
