"""Auditing stability preservers with the falsifier.

Each transform is applied exactly, its precondition is checked, and both
the input and the output go through the falsifier.  A clean input with a
verified counterexample in the output would be a contradiction.

Run with ``python3 demos/preserver_audit.py``.
"""
import numpy as np

from conicstab import PreconditionError, PreserverSpec, audit, check_stability, format_polynomial, parse_polynomial
from conicstab.corpus import lieb_sokal_triple
from conicstab.preservers import lieb_sokal_transform, lift_pair

# %% a few vector transforms on a stable input
f = parse_polynomial("z1*z2 + z1 + 2*z2 + 1", "vector:2")
for spec in (PreserverSpec("invert", {"i": 0}),
             PreserverSpec("differentiate", {"i": 1}),
             PreserverSpec("specialize", {"i": 0, "b": 1j}),
             PreserverSpec("initial_form", {"w": [1, -1]})):
    rep = audit(spec, f, trials=100, seed=0)
    print(f"{spec.describe():40s} licensed={rep.licensed} out={format_polynomial(rep.output)} "
          f"agreement={rep.agreement}")

# %% psd transforms
det3 = parse_polynomial("z11*z22*z33 - z11*z23^2 - z22*z13^2 - z33*z12^2 + 2*z12*z13*z23", "sym:3")
for spec in (PreserverSpec("psd_minor", {"J": [0, 2]}),
             PreserverSpec("psd_dir_derivative", {"V": np.diag([1.0, 0, 0])}),
             PreserverSpec("psd_initial_form", {"W": [[4, 4, 6], [4, 4, 6], [6, 6, 0]]})):
    rep = audit(spec, det3, trials=100, seed=0)
    print(f"{spec.kind:20s} licensed={rep.licensed} ({rep.reason}) agreement={rep.agreement}")

# %% Lieb-Sokal on a constructed triple
rng = np.random.default_rng(0)
t = lieb_sokal_triple(rng, "vector", 3)
print("g + y f clean on K x R>=0:",
      check_stability(lift_pair(t.g, t.f), t.cone.lift(), trials=100, seed=0).clean)
out = lieb_sokal_transform(t.g, t.f, t.v)
print("g - d_v f clean:", out.is_zero() or check_stability(out, t.cone, trials=100, seed=0).clean)

try:
    lieb_sokal_transform(parse_polynomial("0", "vector:2"), parse_polynomial("z1^2 + z2", "vector:2"), [1, 0])
except PreconditionError as exc:
    print("rejected:", exc, "measured =", exc.measured)
