"""Exact and numerical verification of the fixed-point subgroups of F4, E6 and E7
under the commuting involutions sigma and gamma."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"
