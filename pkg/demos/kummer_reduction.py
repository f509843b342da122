"""Radicands mu with F(mu^(1/p))/Q abelian and unramified outside p are zeta^t up to p-th powers."""

# %% the abelian criterion on two radicands
from kwcheck import KummerDatum, abelian_criterion, field_new, reduce_generator, verify_prop_exp

F = field_new(5)
z = F.zeta()
print(abelian_criterion(KummerDatum(5, z)).to_json()["verdict"])
print(abelian_criterion(KummerDatum(5, F(2))).to_json()["first_failure"])

# %% peel a disguised radicand back to zeta^t
mu = z ** 3 * ((1 + z) * (2 + z ** 2)) ** 5
red = reduce_generator(KummerDatum(5, mu))
print("t =", red.t, " alpha =", red.alpha, " rho =", red.rho, " verified:", red.verify())

# %% exhaustive sweep over <zeta, 1 - zeta, cyclotomic units> mod 5th powers
cert = verify_prop_exp(5)
print(cert["class_count"], "classes, survivors", cert["survivors"])
print("degree-5 subfield of", cert["extension"], ":", cert["degree_p_subfield_period_polynomial"])
