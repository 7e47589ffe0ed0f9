"""
Singular vectors and Uglov functions
====================================

At Delta = Delta_{r,s} the Verma module has a singular vector at level rs/2.
Bosonizing it gives a multiple of the Uglov function P_(r^s) at
gamma = 1/beta^2, which is annihilated by every positive mode.
"""
from uglov_nsr.nsr import verify_singular_uglov
from uglov_nsr.verma import bosonize, compare_uglov, singular_vector

for r, s in [(1, 1), (2, 1), (1, 2), (3, 1), (1, 3)]:
    chi = singular_vector(r, s)
    print(f"chi_({r},{s}) =", chi)
    print("  bosonized:", bosonize(chi, r, s))
    rep = compare_uglov(r, s)
    print("  proportional to the Uglov function:", rep["proportional"], rep.get("constant"))

# The same statement checked directly on the Uglov side, R sector included.
rep = verify_singular_uglov(2, 1)
print("(2,1):", rep["sector"], "passed:", rep["passed"], "G_0 eigenvalue:", rep["g0_eigenvalue"])
