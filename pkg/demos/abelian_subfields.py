"""Subfields of cyclotomic fields from subgroups of (Z/n)^x, named by Gaussian periods."""

# %% every subfield of Q(zeta_16)
from kwcheck.lattice import AbelianField, galois_quotient, period_generator, ramification_profile, subgroups

for H, _ in subgroups(16):
    K = AbelianField(16, H)
    _, label, poly = period_generator(K)
    print(f"H={list(H)!s:28} deg {K.degree}  {galois_quotient(K).invariants}  real={K.is_real()}  {label}: {poly}")

# %% quadratic fields unramified outside 2
from kwcheck.lattice import verify_prop_pex2

cert = verify_prop_pex2(10000)
print(cert["route_a"], cert["route_b"], "real:", cert["real"])

# %% ramification of the real cubic field of conductor 9
K = AbelianField.from_subgroup(9, [1, 8])
print(ramification_profile(K), period_generator(K)[2])
