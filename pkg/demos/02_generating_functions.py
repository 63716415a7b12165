"""
Generating functions along l - m = const and along fixed m
==========================================================

Each family is evaluated twice: as its series in t, and as a closed form
(a single high-order jet derivative for the even/odd families, an algebraic
expression for fixed m). Agreement of the two is the identity being checked.
"""

import numpy as np

from legcoh import genfun
from legcoh.genfun import GenFunQuery

# Even family at k = 0 is just exp(t sqrt(1-x^2)).
q = GenFunQuery(x=0.6, t=2.0, index=0)
print("even k=0:", genfun.genfun_even_closed(q), "  exp(1.6) =", np.exp(1.6))

# A sweep of the even and odd families for k = 3.
print("\n   x      t        even series / closed            odd series / closed")
for x in (-0.8, 0.0, 0.5):
    for t in (-3.0, 1.0):
        q = GenFunQuery(x, t, 3)
        es, ec = genfun.genfun_even_series(q), genfun.genfun_even_closed(q)
        os_, oc = genfun.genfun_odd_series(q), genfun.genfun_odd_closed(q)
        print(f"{x:5.2f} {t:6.2f}  {es.value:14.8e} {ec:14.8e}   {os_.value:14.8e} {oc:14.8e}")

# The series report how many terms they needed and what was left over.
res = genfun.genfun_even_series(GenFunQuery(0.2, 3.0, 5))
print(f"\nk=5, t=3: {res.terms} terms, converged={res.converged}, tail={res.tail:.2e}")

# Fixed m: m = 0 is the classical 1/sqrt(1 + 2xt + t^2).
q = GenFunQuery(0.0, 0.5, 0)
print("\nfixed m=0:", genfun.genfun_fixed_m_closed(q), genfun.genfun_fixed_m_series(q).value)

# Near |t| = 1 the series converges slowly; raise the term cap.
q = GenFunQuery(0.3, 0.9, 4, truncation=600)
res = genfun.genfun_fixed_m_series(q)
print(f"fixed m=4, t=0.9: series {res.value:.15e} ({res.terms} terms), closed {genfun.genfun_fixed_m_closed(q):.15e}")

# The closed form is written without the t^2 in the denominator, so it is
# accurate even at tiny t where the textbook expression cancels.
for t in (1e-2, 1e-4, 1e-6):
    lit = genfun.fixed_m_closed_literal(0.3, t, 2)
    new = genfun.genfun_fixed_m_closed(GenFunQuery(0.3, t, 2))
    print(f"t={t:.0e}: textbook {lit:.16f}  rationalized {new:.16f}")
