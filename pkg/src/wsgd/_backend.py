"""Pick the kernel implementation once, at import.

``WSGD_BACKEND`` may be ``auto`` (default: compiled if importable),
``compiled`` (fail loudly if the extension is missing) or ``python``.
"""
import importlib
import os

KERNEL_NAMES = (
    "grunwald_weights",
    "fused_weights",
    "wsgd_left_sum",
    "wsgd_right_sum",
    "left_operator",
    "lu_factor",
    "lu_solve",
    "q_basis",
)


def load(name="auto"):
    """Return the kernel module for ``name`` ('auto', 'compiled' or 'python')."""
    if name == "python":
        return importlib.import_module("wsgd._fallback")
    if name not in ("auto", "compiled"):
        raise ValueError(f"unknown backend {name!r}; expected auto, compiled or python")
    try:
        return importlib.import_module("wsgd._kernels")
    except ImportError:
        if name == "compiled":
            raise
        return importlib.import_module("wsgd._fallback")


def available():
    """Names of the backends that can be loaded in this environment."""
    names = ["python"]
    try:
        importlib.import_module("wsgd._kernels")
    except ImportError:
        pass
    else:
        names.insert(0, "compiled")
    return names


kernels = load(os.environ.get("WSGD_BACKEND", "auto"))
BACKEND = kernels.NAME
