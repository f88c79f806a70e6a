"""Randomized property suites over the exact engine.

Each suite runs a fixed number of seeded cases (deterministic for a given
seed) and reports failures with enough detail to replay them.  These are
consistency checks on top of the unit oracles, not a substitute for them.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import builtin_algebra
from .modules import ModuleVector, build_module
from .pbw import UEAElement, grading_of, normal_order


class PropertyReport:
    def __init__(self, name, cases, failures):
        self.name = name
        self.cases = cases
        self.failures = failures

    @property
    def passed(self):
        return not self.failures

    def payload(self):
        return {
            "name": self.name,
            "cases": self.cases,
            "failures": list(self.failures),
            "passed": self.passed,
        }


def _random_coeff(rng):
    num = rng.randint(-4, 4) or 1
    den = rng.randint(1, 3)
    return Fraction(num, den)


def _random_monomial(rng, spec, max_total=3):
    exps = [0] * spec.n
    for _ in range(rng.randint(0, max_total)):
        exps[rng.randrange(spec.n)] += 1
    return tuple(exps)


def _random_element(rng, spec, max_terms=2, max_total=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[_random_monomial(rng, spec, max_total)] = _random_coeff(rng)
    return UEAElement(spec, terms)


def _random_module(rng):
    kind = rng.choice(
        (
            "universal_S",
            "universal_S1",
            "universal_sl2",
            "universal_H",
            "L_xi",
            "M_a",
            "M_sl2_casimir",
            "verma_alpha",
            "tensor",
        )
    )
    nz = lambda: Fraction(rng.choice((1, 2, -1, 3)), rng.choice((1, 2)))
    any_ = lambda: Fraction(rng.randint(-2, 2), rng.choice((1, 2)))
    if kind == "universal_S":
        params = {"e": any_(), "p": any_(), "z": any_()}
    elif kind == "universal_S1":
        params = {"e": any_(), "p": any_(), "z": any_()}
    elif kind == "universal_sl2":
        params = {"e": any_()}
    elif kind == "universal_H":
        params = {"p": any_(), "z": nz()}
    elif kind == "L_xi":
        params = {"e": nz(), "xi": any_()}
    elif kind == "M_a":
        params = {"e": any_(), "p": nz(), "a": any_()}
    elif kind == "M_sl2_casimir":
        params = {"e": nz(), "omega": any_()}
    elif kind == "verma_alpha":
        params = {"alpha": any_()}
    else:
        z, p = nz(), any_()
        e = any_()
        params = {"e": e, "p": p, "z": z}
        if e - p * p / (2 * z):
            params["omega"] = any_()
    return build_module(kind, params)


def _random_vector(rng, module, max_deg=2):
    terms = {}
    basis = module.monomials_upto(max_deg)
    for _ in range(rng.randint(1, 2)):
        terms[rng.choice(basis)] = _random_coeff(rng)
    return ModuleVector(module, terms)


def representation_axiom(seed, cases=200):
    """act(x, act(y, v)) == act(x*y, v) across every module kind."""
    rng = random.Random(seed)
    failures = []
    for case in range(cases):
        module = _random_module(rng)
        spec = module.spec
        x = _random_element(rng, spec, max_terms=2, max_total=2)
        y = _random_element(rng, spec, max_terms=2, max_total=2)
        v = _random_vector(rng, module)
        lhs = module.act(x, module.act(y, v))
        rhs = module.act(x * y, v)
        if lhs != rhs:
            failures.append(
                f"case {case}: kind={module.kind} x={x.render()} "
                f"y={y.render()} v={v.render()}"
            )
    return PropertyReport("representation_axiom", cases, failures)


def multiplication_associativity(seed, cases=200):
    """(x*y)*z == x*(y*z) in the enveloping algebra, Laurent powers included."""
    rng = random.Random(seed)
    spec = builtin_algebra("schrodinger")
    z_idx = spec.index_of("z")
    failures = []
    for case in range(cases):
        elems = []
        for _ in range(3):
            el = _random_element(rng, spec, max_terms=2, max_total=3)
            if rng.random() < 0.25:
                terms = {}
                for mono, c in el.terms.items():
                    m = list(mono)
                    m[z_idx] -= rng.randint(1, 2)
                    terms[tuple(m)] = c
                el = UEAElement(spec, terms, laurent=True)
            elems.append(el)
        x, y, w = elems
        if (x * y) * w != x * (y * w):
            failures.append(
                f"case {case}: x={x.render()} y={y.render()} z={w.render()}"
            )
    return PropertyReport("multiplication_associativity", cases, failures)


def normal_order_idempotence(seed, cases=200):
    """Monomials produced by straightening are fixed points of straightening."""
    rng = random.Random(seed)
    spec = builtin_algebra("schrodinger")
    names = [g.name for g in spec.generators]
    failures = []
    for case in range(cases):
        word = [rng.choice(names) for _ in range(rng.randint(2, 5))]
        product = normal_order(spec, word)
        for mono in product.terms:
            expanded = []
            for i, e in enumerate(mono):
                expanded.extend([names[i]] * e)
            again = normal_order(spec, expanded)
            if again != UEAElement(spec, {mono: Fraction(1)}):
                failures.append(f"case {case}: word={' '.join(word)} mono={mono}")
                break
    return PropertyReport("normal_order_idempotence", cases, failures)


def grading_preservation(seed, cases=200):
    """Products of graded monomials stay homogeneous of the summed grading."""
    rng = random.Random(seed)
    spec = builtin_algebra("schrodinger")
    failures = []
    for case in range(cases):
        m1 = _random_monomial(rng, spec, max_total=3)
        m2 = _random_monomial(rng, spec, max_total=3)
        a = UEAElement(spec, {m1: Fraction(1)})
        b = UEAElement(spec, {m2: Fraction(1)})
        prod = a * b
        if prod.is_zero:
            continue
        try:
            g = grading_of(prod)
        except Exception as exc:  # inhomogeneous output is the failure mode
            failures.append(f"case {case}: {m1} * {m2}: {exc}")
            continue
        if g != grading_of(a) + grading_of(b):
            failures.append(f"case {case}: {m1} * {m2} grading {g}")
    return PropertyReport("grading_preservation", cases, failures)


def nplus_degree_monotonicity(seed, cases=200):
    """Acting by a raising generator never increases basis degree.

    This is the property that makes the degree-truncated Whittaker solver
    exact rather than approximate.
    """
    rng = random.Random(seed)
    failures = []
    for case in range(cases):
        module = _random_module(rng)
        basis = module.monomials_upto(3)
        fm = rng.choice(basis)
        for name in module.constraint_gens:
            image = module.act(
                module.action_element(name), module.basis_vector(fm)
            )
            if image.degree() > sum(fm):
                failures.append(
                    f"case {case}: kind={module.kind} gen={name} mono={fm}"
                )
    return PropertyReport("nplus_degree_monotonicity", cases, failures)


ALL_SUITES = (
    representation_axiom,
    multiplication_associativity,
    normal_order_idempotence,
    grading_preservation,
    nplus_degree_monotonicity,
)


def run_suites(seed, cases=200):
    return [suite(seed + offset, cases) for offset, suite in enumerate(ALL_SUITES)]
