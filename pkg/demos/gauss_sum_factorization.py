"""Gauss sums realise the Stickelberger factorization of primes q = 1 mod p."""

# %%
from kwcheck import gauss_sum, gauss_sum_power_descend, factor_ideal, principal_ideal
from kwcheck.stick import verify_stickelberger_factorization

p, q = 5, 11
g = gauss_sum(p, q)
print("g * conj(g) =", g.value * g.value.conj())

# %% g^p lives in Q(zeta_p)
G = gauss_sum_power_descend(g)
print("g^5 =", G)
for P, e in factor_ideal(principal_ideal(G)):
    print(f"  (q, zeta - {P.root()})^{e}")

# %% compare with theta applied to the distinguished prime
cert = verify_stickelberger_factorization(p, q)
print(cert["checks"], "relabeling c =", cert["relabeling"])
