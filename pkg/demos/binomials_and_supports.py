"""Supports of stable polynomials: binomials, jump systems, step paths.

Run with ``python3 demos/binomials_and_supports.py``.
"""
import numpy as np

from conicstab import (DetBlockSpec, check_psd_stability, check_stability, classify_psd_binomial,
                       classify_stable_binomial, conjecture_search, det_support_analysis, format_polynomial,
                       is_jump_system, parse_polynomial)
from conicstab.symmat import SymVarSpace

# %% two-term polynomials in the vector setting
for text in ("z1 + 2", "z1 + z2", "z1*z2 - 3", "z1^2 + 1", "z1*z2 + 1"):
    f = parse_polynomial(text, "vector:2")
    (a, ca), (b, cb) = sorted(f.items())
    cls = classify_stable_binomial(a, b, ca, cb)
    v = check_stability(f, trials=200, seed=0)
    print(f"{text:12s} form={cls.form} consistent={cls.consistent} falsifier: {v.message}")

# %% psd binomials only get a necessary condition
# "consistent" does not mean stable: z11*z22 + z12^2 passes the test and still fails
for text in ("z11*z22 - z12^2", "z11*z22 + z12^2", "z11*z22 - (1+1i)*z12^2", "z11^2 + z12^2", "z11 + z12"):
    f = parse_polynomial(text, "sym:2")
    print(text, "->", classify_psd_binomial(f).verdict, "|", check_psd_stability(f, 200, 0).message)

# %% jump systems
good = {(0, 0), (1, 0), (0, 1), (1, 1)}
bad = {(0, 0), (3, 0)}
print("square is jump system:", is_jump_system(good).ok)
print("{0, 3e1} is jump system:", is_jump_system(bad).ok)

f = parse_polynomial("z1*z2 + z1 + z2 + 1", "vector:2")
print("support of", format_polynomial(f), "->", is_jump_system(f.support()).ok)

# %% polynomials of determinants
spec = DetBlockSpec((2, 1), {(1, 1): 1, (1, 0): 1})
rep = det_support_analysis(spec)
print(format_polynomial(spec.polynomial(), sym=True))
print("residual support", rep.residual_support, "verdict:", rep.verdict)

# %% step paths towards a diagonal monomial
f = parse_polynomial("z11 + z22 - 2*z12", "sym:3") * parse_polynomial("z11*z33 - z13^2", "sym:3")
beta = next(iter(parse_polynomial("z12*z13^2", "sym:3").support()))
res = conjecture_search(f, beta)
d = res.path.to_dict(SymVarSpace(3))
print(" -> ".join(d["path"]), res.path.kinds)
