"""Sample Brownian paths on a dyadic grid and compute their path norms.

Demonstrates the scaled increment norms converging to the Gaussian moment
(E|W(1)|^p)^(1/p), the finite sup-form Besov norm next to the divergent
l^2-aggregated seminorm, and the exponential Orlicz norms.

Run:  python demos/brownian_path_norms.py
"""

import math

import numpy as np

from besovbm import besov
from besovbm.besov import BesovParams
from besovbm.simulate import RngSeed, gaussian_abs_moment, sample_bm
from besovbm.spaces import finite_lq

DEPTH = 14
space = finite_lq(1, 2.0)

print(f"One standard scalar Brownian path at depth {DEPTH} (grid step 2^-{DEPTH}).")
path = sample_bm(space, [1.0], DEPTH, RngSeed(2024, 1))

print("\nScaled increment norms 2^(n/2) ||W(. + 2^-n) - W||_{L^2} approach c_2 = 1:")
for n in (2, 4, 6, 8):
    y = 2.0 ** (n / 2.0) * besov.dyadic_increment_lp(path, n, 2.0)
    print(f"  n = {n}: {y:.4f}")

print("\nAveraging over 100 paths at n = 8, for p in (1, 2, 4):")
for p in (1.0, 2.0, 4.0):
    ys = [
        2.0**4 * besov.dyadic_increment_lp(sample_bm(space, [1.0], DEPTH, RngSeed(2024, 1 + i)), 8, p)
        for i in range(100)
    ]
    print(f"  p = {p:g}: mean = {np.mean(ys):.4f}  vs  (E|N|^p)^(1/p) = {gaussian_abs_moment(p):.4f}")

n_max = besov.default_n_max(DEPTH)
sup_form = besov.besov_norm(path, BesovParams(0.5, 2.0, math.inf, n_max))
print(f"\nSup-form Besov norm (alpha = 1/2, p = 2, q = inf, n_max = {n_max}):")
print(f"  L^2 part = {sup_form.lp_part:.4f}, seminorm = {sup_form.seminorm_part:.4f}, "
      f"total = {sup_form.total:.4f}")

print("\nThe l^2-aggregated seminorm keeps growing with the scale cap (no limit):")
for cap in (4, 6, 8):
    semi = besov.besov_seminorm(path, BesovParams(0.5, 2.0, 2.0, cap))
    print(f"  n_max = {cap}: {semi:.4f}")

print("\nExponential Orlicz norms (beta = 2):")
print(f"  sup_p p^(-1/2) L^p norm          = {besov.exp_orlicz_lp_norm(path, 2.0):.4f}")
print(f"  Luxemburg norm in exp(x^2) - 1   = {besov.luxemburg_function_norm(path, 2.0):.4f}")
print(f"  sup_p p^(-1/2) Besov norm        = {besov.besov_orlicz_norm(path, 0.5, 2.0):.4f}")
