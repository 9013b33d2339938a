"""Exact verification engine for lightlike hypersurfaces of (ε)-almost paracontact manifolds."""

__version__ = "0.1.0"
