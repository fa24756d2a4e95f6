"""Opinion Urn - coupled Pólya urn opinion dynamics on graphs."""

__version__ = "0.1.0"
