"""Two-level system + single mode with simultaneous one- and two-photon couplings."""

try:
    from ._qrabi import *  # noqa: F401,F403  (installed layout: extension inside the package)
except ImportError:
    from _qrabi import *  # noqa: F401,F403  (build-tree layout: extension on PYTHONPATH)
