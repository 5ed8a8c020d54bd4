"""Classical simulation and verification toolkit for 2-qubit matchgate circuits."""

__version__ = "0.1.0"
