"""Exact Mukai-lattice computations for Enriques surfaces."""
