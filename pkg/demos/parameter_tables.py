"""Parameter arithmetic at publication scale, in exact integers.

The bundled parameter rows describe t-designs far beyond desk-scale
construction; their key counts, optimality ratios, and divisibility gates
are still one-line exact computations.
"""

import math

from authdesigns import (
    DesignParameters,
    divisibility_check,
    lambda_s,
    massey_schobi_bound,
    optimality_class,
    teirlinck_params,
)
from authdesigns.catalog import entries

rows = [e for e in entries() if e.kind == "params-only"]
print(f"{'name':<20} {'params':>18} {'b':>12} {'b_opt':>11} {'class':>13} v|b")
for entry in rows:
    p = entry.params
    label = f"{p.t}-({p.v},{p.k},{p.lambda_})"
    ok, _ = divisibility_check(p)
    print(f"{entry.name:<20} {label:>18} {p.b:>12} {entry.b_opt:>11} "
          f"{optimality_class(p):>13} {'yes' if ok else 'no'}")
print()

print("t-(v, t+1, (t+1)!^(2t+1)) family at the smallest admissible order:")
for t in range(1, 8):
    modulus = math.factorial(t + 1) ** (2 * t + 1)
    params, b = teirlinck_params(t, t + modulus)
    print(f"  t={t}: v={params.v}, lambda={params.lambda_}, "
          f"b has {len(str(b))} digits")
print()

print("an inadmissible tuple and its fractional block counts:")
p = DesignParameters(2, 8, 3, 1)
for s in range(p.t + 1):
    value = lambda_s(p, s)
    print(f"  lambda_{s} = {value}")
print(f"  admissible: {p.is_admissible}")
print()

q = DesignParameters(6, 19, 7, 4)
print(f"6-(19,7,4): b = {q.b}, key bound = {massey_schobi_bound(19, 7, 6)}, "
      f"ratio = {q.b // 3876}, class = {optimality_class(q)}")
