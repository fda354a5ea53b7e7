"""Box-covering algorithms for fractal analysis of networks."""

__version__ = "0.1.0"

from importlib import resources


def bundled_network_path(name: str):
    """Path to a bundled edge list, e.g. 'dolphins' or 'polbooks'."""
    return resources.files(__name__) / "data" / f"{name}.edges"
