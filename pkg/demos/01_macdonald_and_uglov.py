"""
Macdonald polynomials and their Uglov limit
===========================================

P_mu(q, t) is computed exactly in the power-sum basis.  Sending q and t to
-1 along q = -e^h, t = -e^(gamma h) leaves a finite limit, the Uglov
function, and the h^1 term of every coefficient vanishes.
"""
from uglov_nsr.macdonald import eigenvalue, eta_zero, invert_qt, macdonald
from uglov_nsr.uglov import uglov, uglov_at, uglov_beta

# Degree two, in both bases.
P = macdonald((2,))
print("P_(2) =", P.expansion)
print("m-basis:", {k: str(v) for k, v in P.m_expansion.items()})

# eta_0 acts diagonally on P_mu, and P_mu is unchanged by (q, t) -> (1/q, 1/t).
P21 = macdonald((2, 1)).expansion
print("eta_0 eigenvalue on P_(2,1):", eigenvalue((2, 1)))
print("eigen-identity holds:", eta_zero(P21) == P21.scale(eigenvalue((2, 1))))
print("inversion symmetric:", invert_qt(P21) == P21)

# The Uglov limit keeps gamma symbolic; the first order term is zero.
U = uglov((2, 1))
print("Uglov (2,1) =", U.expansion)
print("h^1 terms vanish:", U.first_order_zero)

# Specialize gamma afterwards, or use gamma = 1/beta^2 directly.
print("gamma = 2:", uglov_at((2, 1), 2).expansion)
print("gamma = 1/beta^2, (2,2):", uglov_beta((2, 2)))
