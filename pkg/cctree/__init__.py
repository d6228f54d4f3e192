"""Code Change Trees: tree-shaped code change representations for vulnerability prediction."""

__version__ = "0.1.0"
