"""Exact verification toolkit for root data, Tits sections, Chevalley involutions and endoscopic bookkeeping."""

__version__ = "0.1.0"
