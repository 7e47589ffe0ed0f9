"""
The q-Virasoro current near q, t = -1
=====================================

T(z) acts on symmetric functions with q^(1/2), t^(1/2) and u symbolic.
Expanding around q = -e^h, t = -e^(h/beta^2) the first two orders are
fermion and NSR currents.
"""
from uglov_nsr.qvir import (
    check_limit_currents,
    e0_closed,
    e1_closed,
    limit_eigenvalue_check,
    macdonald_decomposition_check,
    verify_qvir_singular,
)

# Singular vectors of the deformed algebra are Macdonald polynomials.
print("T_n P_(2,2) = 0:", verify_qvir_singular(2, 2)["passed"])

# Order 0 is the additional fermion, order 1 combines G and that fermion.
for sector in ("NS", "R"):
    rep = check_limit_currents(sector, 4)
    print(sector, "mode identities:", len(rep["cases"]), "all pass:", rep["passed"])

# The Macdonald operator splits into the two vertex operators.
print("decomposition:", macdonald_decomposition_check(3)["passed"])

# Eigenvalues of the expanded operator on Uglov functions.
for r, s in [(1, 1), (2, 1), (2, 2)]:
    mu = (r,) * s
    rep = limit_eigenvalue_check(r, s)
    print((r, s), "E0 =", e0_closed(mu), " E1 =", e1_closed(mu), " checked:", rep["passed"])
