"""Acceptance suite: one test per headline guarantee of the package.

Every comparison is exact (Fraction arithmetic end to end); each test
prints a single summary line so a verbose run reads as a checklist.
"""

from fractions import Fraction as F

from pbwhit.algebra import builtin_algebra, check_jacobi
from pbwhit.linalg import SpanAccumulator
from pbwhit.localization import verify_phi_homomorphism
from pbwhit.modules import (
    build_module,
    filtration_check,
    simplicity_probe,
    tensor_certification,
    whittaker_vectors,
)
from pbwhit.pbw import (
    centrality_check,
    grading_of,
    special_element,
    verify_straightening_identities,
)
from pbwhit.properties import run_suites


def test_jacobi_identity_all_triples():
    rep = check_jacobi(builtin_algebra("schrodinger"))
    assert rep.triples_checked == 20
    assert rep.passed and not rep.failures
    print("PASS jacobi identity: 20/20 generator triples")


def test_commutator_power_identities():
    spec = builtin_algebra("schrodinger")
    rep = verify_straightening_identities(spec, 6)
    assert len(rep.entries) == 36
    assert all(ok for _, _, ok, _, _ in rep.entries)
    print("PASS commutator closed forms: 36/36 entries, n = 1..6")


def test_central_element_certification():
    sl2 = builtin_algebra("sl2")
    schro = builtin_algebra("schrodinger")
    omega = special_element(sl2, "casimir_sl2")
    c = special_element(schro, "quasi_central")
    rep = centrality_check(omega, element_name="casimir_sl2")
    assert rep.passed and [g for g, _, _ in rep.entries] == ["f", "h", "e"]
    rep = centrality_check(c, modulo_central=True, element_name="quasi_central")
    assert rep.passed and len(rep.entries) == 6
    assert grading_of(omega) == 0 and grading_of(c) == 0
    print("PASS central elements: casimir exactly, quasi-central modulo z")


def test_localization_homomorphism():
    entries, passed = verify_phi_homomorphism()
    assert passed
    brackets = [e for e in entries if e[0].startswith("[")]
    fixed = [e for e in entries if e[0].startswith("identity on ")]
    assert len(brackets) == 15 and all(ok for _, ok, *_ in brackets)
    assert len(fixed) == 3 and all(ok for _, ok, *_ in fixed)
    print("PASS localization map: 15 bracket pairs, fixes p, q, z")


def _span_of_iterates(module, element, steps):
    acc = SpanAccumulator(key=lambda fm: (sum(fm), fm))
    v = module.cyclic()
    for _ in range(steps):
        acc.add(v.terms)
        v = module.act(element, v)
    return acc


def test_whittaker_dimensions_at_bound_six():
    m = build_module("universal_sl2", {"e": 0})
    assert whittaker_vectors(m, 6).dimension == 7

    m = build_module("universal_sl2", {"e": 1})
    rep = whittaker_vectors(m, 6)
    assert rep.dimension == 4
    omega_span = _span_of_iterates(m, special_element(m.spec, "casimir_sl2"), 4)
    assert all(omega_span.contains(v.terms) for v in rep.basis)

    rep = whittaker_vectors(build_module("universal_S1", {"e": 1, "p": 0}), 6)
    assert rep.dimension == 7
    assert all(fm[1] == 0 for v in rep.basis for fm in v.terms)

    rep = whittaker_vectors(build_module("universal_S1", {"e": 0, "p": 1}), 6)
    assert rep.dimension == 1

    m = build_module("universal_S", {"e": 0, "p": 1, "z": 0})
    rep = whittaker_vectors(m, 6)
    assert rep.dimension == 4
    c_span = _span_of_iterates(m, special_element(m.spec, "quasi_central"), 4)
    assert all(c_span.contains(v.terms) for v in rep.basis)
    print("PASS whittaker dimensions at bound 6: 7, 4, 7, 1, 4 with span checks")


def test_wrong_type_probe_dimension_zero():
    m = build_module("universal_S", {"e": 1, "p": 1, "z": 0})
    for probe in ({"probe_p": F(2)}, {"probe_e": F(0)},
                  {"probe_e": F(2), "probe_p": F(3)}):
        rep = whittaker_vectors(m, 4, **probe)
        assert rep.dimension == 0 and rep.certified
    rep = whittaker_vectors(build_module("universal_sl2", {"e": 1}), 4, probe_e=F(0))
    assert rep.dimension == 0 and rep.certified
    rep = whittaker_vectors(build_module("universal_H", {"p": 1, "z": 1}), 4,
                            probe_p=F(2))
    assert rep.dimension == 0 and rep.certified
    print("PASS mismatched probe types: dimension 0 in all cases")


def test_quotient_scalar_action_on_basis():
    m = build_module("M_a", {"e": 0, "p": 1, "a": 3})
    c = special_element(m.spec, "quasi_central")
    for fm in m.monomials_upto(6):
        v = m.basis_vector(fm)
        assert m.act(c, v) == 3 * v
    m = build_module("M_sl2_casimir", {"e": 1, "omega": 5})
    om = special_element(m.spec, "casimir_sl2")
    for fm in m.monomials_upto(6):
        v = m.basis_vector(fm)
        assert m.act(om, v) == 5 * v
    print("PASS quotient scalars: c acts by 3, casimir acts by 5, all basis")


def test_simplicity_probes_and_singular_vector():
    one_dimensional = [
        ("M_a", {"e": 0, "p": 1, "a": 3}),
        ("L_xi", {"e": 1, "p": 0, "z": 0, "xi": 1}),
        ("M_sl2_casimir", {"e": 1, "omega": 5}),
        ("universal_H", {"p": 1, "z": 2}),
        ("tensor", {"e": 1, "p": 0, "z": 1, "omega": 2}),
    ]
    for kind, params in one_dimensional:
        rep = simplicity_probe(build_module(kind, params), 6)
        assert rep.passed, kind
    verma = build_module("verma_alpha", {"alpha": 2})
    for bound in (3, 6):
        rep = simplicity_probe(verma, bound)
        assert not rep.passed
        assert [v.render() for v in rep.extra] == ["1/1*f^3"]
    print("PASS simplicity probes: five 1-dim kinds; verma(2) flags f^3")


def test_filtration_chain():
    rep = filtration_check(F(0), F(1), F(0), 2, 6)
    assert rep.passed
    assert list(rep.dims) == [84, 35, 10]
    assert list(rep.layers) == [49, 25]
    print("PASS filtration: dims 84/35/10, layers 49/25 at bound 6")


def test_tensor_type_arithmetic():
    # total e-eigenvalue is the sl2 part plus p^2/(2z)
    cases = [
        ({"e": 1, "p": 0, "z": 1, "omega": 2}, F(1)),
        ({"e": 1, "p": 2, "z": 2}, F(1)),
    ]
    for params, e_total in cases:
        m = build_module("tensor", params)
        rep = tensor_certification(m)
        assert rep.passed
        scalars = {name: expected for name, expected, _ in rep.checks}
        assert scalars["e"] == e_total
        assert scalars["p"] == F(params["p"])
        assert scalars["z"] == F(params["z"])
    print("PASS tensor types: (z,p,e) arithmetic certified on w(x)w")


def test_randomized_property_suites():
    reports = run_suites(0, cases=200)
    assert len(reports) == 5
    for rep in reports:
        assert rep.cases == 200 and rep.failures == [], rep.name
    print("PASS property suites: 5 x 200 seeded cases, zero failures")
