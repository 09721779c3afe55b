"""cbstools - Strengthened Cauchy-Schwarz and Hölder constants from the command line.

Evaluates the exact Cauchy-Schwarz identities, angular distances and
strengthened constants for subspaces and cones, and Mazur-map based
Hölder constants on finite measure spaces.
"""

__version__ = "0.1.0"
__app_name__ = "cbstools"
