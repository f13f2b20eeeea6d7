"""Determinants on the psd cone, and what initial forms do to them.

Run with ``python3 demos/determinants_and_initial_forms.py``.
"""
import numpy as np

from conicstab import (check_psd_stability, format_polynomial, frobenius_initial_form, hadamard_scale,
                       inversion_image, symbolic_determinant)
from conicstab.corpus import random_pd_integer

# %% det_n survives the falsifier
for n in (2, 3, 4):
    v = check_psd_stability(symbolic_determinant(n), trials=300, seed=0)
    print(f"det{n}: {v.message}")

# %% a weight that is not positive definite
det3 = symbolic_determinant(3)
W = [[4, 4, 6], [4, 4, 6], [6, 6, 0]]
print("eigenvalues of W:", np.round(np.linalg.eigvalsh(W), 3))
g = frobenius_initial_form(det3, W)
print("init_W(det3) =", format_polynomial(g, sym=True))
v = check_psd_stability(g, trials=100, seed=0)
print(v.message)
print("witness:\n", v.witness)

# %% positive definite weights keep stability
rng = np.random.default_rng(1)
for _ in range(3):
    W = random_pd_integer(rng, 3)
    g = frobenius_initial_form(det3, W.tolist())
    print(W.tolist(), "->", format_polynomial(g, sym=True), "|", check_psd_stability(g, 200, 0).message)

# the initial form is the limit of the Hadamard rescaling
h = hadamard_scale(det3, W.tolist(), 1e6)
print("max coefficient gap at lambda = 1e6:",
      max(abs(h.coeff(e) - g.coeff(e)) for e in h.support() | g.support()))

# %% inversion fixes det2
det2 = symbolic_determinant(2)
print("inversion(det2) =", format_polynomial(inversion_image(det2), sym=True))
