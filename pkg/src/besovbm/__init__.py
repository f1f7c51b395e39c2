"""Numerics for Orlicz/Besov path norms of Banach-space-valued Brownian motion.

Subpackages by theme:

* :mod:`besovbm.orlicz` -- Young functions, modulars, Luxemburg and Orlicz norms.
* :mod:`besovbm.spaces` -- finite sequence-space models, dual nets, weak variances.
* :mod:`besovbm.simulate` -- dyadic-grid Brownian paths and Gaussian sampling.
* :mod:`besovbm.besov` -- discretised L^p, Besov, and exponential Orlicz path norms.
* :mod:`besovbm.maxima` -- bounds and Monte Carlo checks for E sup_n |xi_n|.
* :mod:`besovbm.harness` -- experiment drivers, configs, and report emission.
* :mod:`besovbm.cli` -- command-line front end for the experiment drivers.
"""

__version__ = "0.1.0"
