"""Exact computer algebra for Macdonald and Uglov symmetric functions and
free-field realizations of the NSR and q-Virasoro algebras."""

__version__ = "0.1.0"
