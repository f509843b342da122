"""Kummer extensions F(mu^(1/p)) of F = Q(zeta_p).

The abelian criterion is taken as the definition of "abelian over Q":
sigma_a(mu) / mu^a must be a p-th power in F for every a.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from sympy import isprime

from .cyclo import CyclotomicNumber, field_new, pth_power_root
from .ideal import FractionalIdeal, PrimeIdealAboveQ, factor_ideal, principal_ideal, pth_power_shape, valuation


class ReductionError(RuntimeError):
    """A step of the generator reduction failed where theory says it cannot."""


@dataclass(frozen=True)
class KummerDatum:
    p: int
    mu: CyclotomicNumber

    def __post_init__(self):
        if self.p == 2 or not isprime(self.p):
            raise ValueError(f"expected an odd prime, got {self.p}")
        if self.mu.field.conductor != self.p:
            raise ValueError("mu must lie in Q(zeta_p)")
        if self.mu.is_zero():
            raise ValueError("mu must be nonzero")

    @classmethod
    def of(cls, p: int, mu) -> "KummerDatum":
        return cls(p, field_new(p)(mu))


@dataclass
class AbelianCriterionReport:
    p: int
    witnesses: dict[int, CyclotomicNumber | None]
    first_failure: int | None

    @property
    def passed(self) -> bool:
        return self.first_failure is None and all(w is not None for w in self.witnesses.values())

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "verdict": "pass" if self.passed else "fail",
            "first_failure": self.first_failure,
            "witnesses": {str(a): (w.to_json() if w is not None else None) for a, w in self.witnesses.items()},
        }


def abelian_criterion(d: KummerDatum, *, stop_at_first_failure: bool = False) -> AbelianCriterionReport:
    """For each a in 2..p-1 find xi_a with sigma_a(mu) = xi_a^p mu^a, or record the failure."""
    p, mu = d.p, d.mu
    witnesses: dict[int, CyclotomicNumber | None] = {}
    first = None
    for a in range(2, p):
        ratio = mu.galois(a) / mu ** a
        xi = pth_power_root(ratio, p)
        if xi is not None and (xi ** p) * mu ** a != mu.galois(a):
            raise AssertionError("p-th root witness failed re-verification")
        witnesses[a] = xi
        if xi is None and first is None:
            first = a
            if stop_at_first_failure:
                break
    return AbelianCriterionReport(p, witnesses, first)


def unramified_outside_p(d: KummerDatum) -> bool:
    """True iff every prime not above p divides (mu) to a multiple of p."""
    return all(e % d.p == 0 for P, e in factor_ideal(principal_ideal(d.mu)) if P.q != d.p)


def split_completely_check(d: KummerDatum, Q: PrimeIdealAboveQ, report: AbelianCriterionReport | None = None) -> dict:
    """If p does not divide v_Q(mu) and mu passes the criterion, Q has residue degree 1."""
    if Q.p != d.p:
        raise ValueError("prime lies in a different field")
    r = valuation(d.mu, Q)
    cert = {"check": "split-completely", "p": d.p, "prime": Q.to_json(), "valuation": r, "residue_degree": Q.f}
    if r % d.p == 0:
        cert.update(status="inapplicable", reason="p divides the valuation")
        return cert
    report = report or abelian_criterion(d, stop_at_first_failure=True)
    if not report.passed:
        cert.update(status="inapplicable", reason="abelian criterion fails, implication is vacuous")
        return cert
    cert["status"] = "pass" if Q.f == 1 else "fail"
    return cert


# ---------------------------------------------------------------------------
# generator reduction


@dataclass
class GeneratorReduction:
    p: int
    mu: CyclotomicNumber
    a: FractionalIdeal
    alpha: CyclotomicNumber
    eta: CyclotomicNumber
    t: int
    sign: int
    epsilon: CyclotomicNumber
    rho: CyclotomicNumber

    def verify(self) -> bool:
        F = self.mu.field
        z = F.zeta()
        checks = [
            self.a ** self.p == principal_ideal(self.mu),
            abs(self.eta.norm()) == 1 and self.eta.is_integral(),
            self.eta == z ** self.t * self.epsilon,
            self.epsilon.conj() == self.epsilon,
            self.rho ** self.p == self.epsilon,
            self.mu == z ** self.t * (self.alpha * self.rho) ** self.p,
        ]
        return all(checks)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "mu": self.mu.to_json(),
            "t": self.t,
            "sign": self.sign,
            "alpha": self.alpha.to_json(),
            "eta": self.eta.to_json(),
            "epsilon": self.epsilon.to_json(),
            "rho": self.rho.to_json(),
            "ideal": self.a.to_json(),
        }


def reduce_generator(d: KummerDatum, cg=None, *, check_preconditions: bool = True) -> GeneratorReduction:
    """Write mu = zeta^t (alpha rho)^p following the ideal, unit and root-of-unity steps."""
    from .classgroup import PrincipalityUndecided, is_principal

    p, mu = d.p, d.mu
    F = mu.field
    z = F.zeta()
    if check_preconditions:
        if not abelian_criterion(d, stop_at_first_failure=True).passed:
            raise ValueError("precondition failed: abelian criterion does not hold")
        if not unramified_outside_p(d):
            raise ValueError("precondition failed: ramified outside p")
    a = pth_power_shape(mu, p)
    if a is None:
        raise ReductionError("(mu) is not the p-th power of an ideal")
    try:
        alpha = is_principal(a, cg)
    except PrincipalityUndecided as exc:
        raise ReductionError(f"principality of the p-th root ideal undecided: {exc}") from exc
    if alpha is None:
        raise ReductionError("the p-th root ideal is not principal")
    eta = mu / alpha ** p
    if not eta.is_integral() or abs(eta.norm()) != 1:
        raise ReductionError("mu / alpha^p is not a unit")
    ratio = eta / eta.conj()
    match = None
    for s in range(p):
        for sign in (1, -1):
            if ratio == z ** s * sign:
                match = (s, sign)
                break
        if match:
            break
    if match is None:
        raise ReductionError("eta / conj(eta) is not a root of unity")
    s, sign = match
    if sign != 1:
        raise ReductionError("eta / conj(eta) = -zeta^s, so no real unit decomposition exists")
    t = s // 2 if s % 2 == 0 else (s + p) // 2
    eps = eta * z ** (-t)
    if eps.conj() != eps:
        raise ReductionError("epsilon is not real")
    rho = pth_power_root(eps, p)
    if rho is None:
        raise ReductionError("the real unit epsilon is not a p-th power")
    if not rho.is_integral() or abs(rho.norm()) != 1:
        raise ReductionError("the p-th root of epsilon is not a unit")
    red = GeneratorReduction(p, mu, a, alpha, eta, t % p, sign, eps, rho)
    if not red.verify():
        raise AssertionError("generator reduction failed its final verification")
    return red


# ---------------------------------------------------------------------------
# exhaustive sweep over a group of candidate radicands


def candidate_generators(p: int) -> list[tuple[str, CyclotomicNumber]]:
    F = field_new(p)
    z = F.zeta()
    gens = [("zeta", z), ("1-zeta", 1 - z)]
    for a in range(2, (p - 1) // 2 + 1):
        gens.append((f"(1-zeta^{a})/(1-zeta)", (1 - z ** a) / (1 - z)))
    return gens


def verify_prop_exp(p: int, cg=None) -> dict:
    """Sweep V = <zeta, 1-zeta, cyclotomic units> mod p-th powers.

    Survivors of both tests must be exactly the powers of zeta; each survivor
    must also pass the generator reduction with matching t.
    """
    from .lattice import AbelianField, subfield_by_periods

    if p not in (3, 5, 7):
        raise ValueError("the exhaustive sweep is supported for p in {3, 5, 7}")
    F = field_new(p)
    if cg is None:
        from .classgroup import class_group

        cg = class_group(F)
    if not cg.is_trivial():
        raise ValueError("the sweep assumes class number 1")
    gens = candidate_generators(p)
    names = [g for g, _ in gens]
    powers = [[F.one()] for _ in gens]
    for i, (_, g) in enumerate(gens):
        for _ in range(p - 1):
            powers[i].append(powers[i][-1] * g)
    candidates = []
    survivors = []
    for exps in itertools.product(range(p), repeat=len(gens)):
        mu = F.one()
        for i, e in enumerate(exps):
            if e:
                mu = mu * powers[i][e]
        dat = KummerDatum(p, mu)
        unram = unramified_outside_p(dat)
        rep = abelian_criterion(dat, stop_at_first_failure=True)
        ok = unram and rep.passed
        candidates.append({"exponents": list(exps), "unramified_outside_p": unram,
                           "criterion": "pass" if rep.passed else f"fail at a={rep.first_failure}"})
        if ok:
            survivors.append(list(exps))
    expected = [[k] + [0] * (len(gens) - 1) for k in range(p)]
    reductions_ok = True
    for exps in survivors:
        mu = powers[0][exps[0]]
        for i, e in enumerate(exps[1:], start=1):
            mu = mu * powers[i][e]
        try:
            red = reduce_generator(KummerDatum(p, mu), cg, check_preconditions=False)
            reductions_ok &= red.t == exps[0] % p and abs(red.alpha.norm()) == 1 and abs(red.rho.norm()) == 1
        except ReductionError:
            reductions_ok = False
    # zeta is not a p-th power in F, so F(zeta^(1/p)) has degree p over F; it
    # contains zeta_{p^2}, and [Q(zeta_{p^2}) : Q] = p(p-1) forces equality
    L = field_new(p * p)
    embeds = pth_power_root(F.zeta(), p) is None and L.degree == p * (p - 1)
    K = AbelianField.from_subgroup(p * p, [x for x in L.units if pow(x, p - 1, p * p) == 1])
    period_poly = subfield_by_periods(K)
    status = "pass" if sorted(survivors) == expected and reductions_ok and embeds else "fail"
    return {
        "check": "prop-exp",
        "p": p,
        "generators": names,
        "class_count": len(candidates),
        "survivors": survivors,
        "survivors_are_zeta_powers": sorted(survivors) == expected,
        "survivor_reductions_verified": reductions_ok,
        "extension": f"Q(zeta_{p * p})",
        "extension_degree_over_Q": L.degree,
        "degree_p_subfield_period_polynomial": period_poly,
        "candidates": candidates,
        "status": status,
    }
