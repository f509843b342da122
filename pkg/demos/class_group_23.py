"""The first irregular case: Q(zeta_23) has class number 3.

Run with ``python3 demos/class_group_23.py``.
"""

# %% relation search over a factor base of small primes
from kwcheck import class_group, field_new, minus_class_number, stickelberger_element, apply_to_ideal
from kwcheck.classgroup import norm_form_obstruction

F = field_new(23)
cg = class_group(F)
print("factor base bound:", cg.factor_base_bound, "primes:", len(cg.factor_base))
print("relations used:", len(cg.relations))
print("invariants:", cg.invariants, " h^- from Bernoulli numbers:", minus_class_number(23))

# %% the generating class and why it is not principal
P = cg.generator_primes[0]
print("generator:", P)
print(norm_form_obstruction(P))
w = cg.generator_witnesses[0]
print("P^3 is principal, generator has norm", w.norm())

# %% theta kills the class
theta = stickelberger_element(23)
image = apply_to_ideal(theta, P.ideal)
print("class of P:", cg.class_of(P.ideal), " class of P^theta:", cg.class_of(image))
