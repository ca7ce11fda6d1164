import pytest

from basilica import equals
from basilica.core import InputError, PreconditionError
from basilica.descent import (
    FailureReport,
    NotInLattice,
    ProdenseCertificate,
    congruence_transition,
    find_ab,
    find_b_inv_a,
    parse_certificate,
    persist_ab,
    prodense_projection_search,
    solve_coset,
    verify_certificate,
)
from basilica.permgrp import SubgroupHandle
from basilica.structure import ab_image, alpha


def test_congruence_transition_table():
    assert congruence_transition((1, 1)) == (1, 1)
    assert congruence_transition((1, -1)) == (-1, 1)
    assert congruence_transition((-1, 1)) == (1, -1)
    with pytest.raises(InputError):
        congruence_transition((2, 1))


def test_transition_matches_engine(B):
    # both sections of g^2 land in the class the table predicts
    words = ["ab", "ba", "abABab", "aB", "bA", "Ab", "aBBAba"]
    for text in words:
        g = B.element(text)
        cls = ab_image(g)
        if cls not in {(1, 1), (1, -1), (-1, 1)}:
            continue
        predicted = congruence_transition(cls)
        sq = g * g
        assert ab_image(sq.section(0)) == predicted
        assert ab_image(sq.section(1)) == predicted


def test_find_ab_base_cases(B):
    cert = find_ab(B.element("ab"))
    assert cert.vertex == "" and cert.exponent_log == 0
    assert cert.replay()
    cert = find_ab(B.element("ba"))
    assert cert.vertex == "1" and cert.exponent_log == 1
    assert cert.replay()


def test_find_ab_general(B):
    g = B.element("ab") * alpha(1, 1)
    cert = find_ab(g)
    assert cert.replay()
    assert cert.exponent_log == len(cert.vertex)
    power = g ** (2**cert.exponent_log)
    assert equals(power.section_at_vertex(cert.vertex), B.element("ab"))


def test_find_ab_precondition(B):
    with pytest.raises(PreconditionError):
        find_ab(B.element("a"))
    with pytest.raises(PreconditionError):
        find_ab(B.element("aB"))


def test_find_b_inv_a_base_cases(B):
    cert = find_b_inv_a(B.element("Ba"))
    assert cert.vertex == "" and cert.exponent_log == 0
    cert = find_b_inv_a(B.element("bA"))
    assert cert.vertex == "0" and cert.exponent_log == 1
    assert cert.replay()
    cert = find_b_inv_a(B.element("aB"))
    assert cert.vertex == "00" and cert.exponent_log == 2
    assert cert.replay()


def test_find_b_inv_a_intermediate_sections(B):
    # (a b^-1)^2 = (a^-1 b, b a^-1) and (a^-1 b)^2 = (b^-1 a, b^-1 a)
    g = B.element("aB")
    sq = g * g
    assert equals(sq.section(0), B.element("Ab"))
    assert equals(sq.section(1), B.element("bA"))
    g2 = B.element("Ab")
    sq2 = g2 * g2
    assert equals(sq2.section(0), B.element("Ba"))
    assert equals(sq2.section(1), B.element("Ba"))


def test_find_b_inv_a_precondition(B):
    with pytest.raises(PreconditionError):
        find_b_inv_a(B.element("ab"))


def test_descent_budget(B):
    with pytest.raises(Exception) as exc:
        find_ab(B.element("ab") * alpha(2, 2), max_states=1)
    assert "states" in str(exc.value)


def test_persist_ab(B):
    ab = B.element("ab")
    ba = B.element("ba")
    assert persist_ab(ab, "") == (0, ab)
    k, final = persist_ab(ab, "1")
    assert k == 1 and equals(final, ba)
    k, final = persist_ab(ba, "10")
    assert k == 2 and equals(final, ba)
    k, final = persist_ab(ba, "11")
    assert k == 2 and equals(final, ba)
    with pytest.raises(InputError):
        persist_ab(B.element("a"), "0")


def test_persist_ab_replay(B):
    ab = B.element("ab")
    for vertex in ("0", "1", "01", "110", "0101"):
        k, final = persist_ab(ab, vertex)
        power = ab ** (2**k)
        assert power.act(vertex) == vertex
        assert equals(power.section_at_vertex(vertex), final)


def test_solve_coset(B):
    a, b = B.generators()
    H = SubgroupHandle(B, [a, b])
    hw = solve_coset(H, (1, 1))
    assert ab_image(H.evaluate(hw)) == (1, 1)
    res = solve_coset(SubgroupHandle(B, [a * b]), (1, -1))
    assert isinstance(res, NotInLattice)
    assert res.basis == ((1, 1),)
    H2 = SubgroupHandle.from_words(B, ["ab", "bb"])
    hw = solve_coset(H2, (1, -1))
    assert ab_image(H2.evaluate(hw)) == (1, -1)
    assert solve_coset(SubgroupHandle(B, []), (0, 0)) == ()
    res = solve_coset(SubgroupHandle(B, []), (1, 0))
    assert isinstance(res, NotInLattice) and res.basis == ()


def test_solve_coset_negative_coefficients(B):
    H = SubgroupHandle.from_words(B, ["aabb", "ab"])
    # (1,1) = 0*(2,2) + 1*(1,1); (0,0) should give the empty word
    assert solve_coset(H, (0, 0)) == ()
    hw = solve_coset(H, (1, 1))
    assert ab_image(H.evaluate(hw)) == (1, 1)
    hw = solve_coset(H, (3, 3))
    assert ab_image(H.evaluate(hw)) == (3, 3)


def test_search_full_group(B):
    H = SubgroupHandle(B, list(B.generators()))
    cert = prodense_projection_search(H)
    assert isinstance(cert, ProdenseCertificate)
    assert len(cert.vertex) <= 8
    assert verify_certificate(H, cert)


def test_search_failures(B):
    res = prodense_projection_search(SubgroupHandle(B, [B.element("ab")]))
    assert isinstance(res, FailureReport)
    assert res.stage == 4
    assert res.lattice == ((1, 1),)
    res = prodense_projection_search(SubgroupHandle(B, [B.generator("a")]))
    assert isinstance(res, FailureReport)
    assert res.stage == 1
    assert res.lattice == ((1, 0),)


def test_search_battery_certificates_sound(B):
    batteries = [["a", "b"], ["ab", "bb"], ["ba", "bb"], ["ba", "aB"], ["ba", "Ab"]]
    for words in batteries:
        H = SubgroupHandle.from_words(B, words)
        result = prodense_projection_search(H)
        assert isinstance(result, ProdenseCertificate), words
        assert verify_certificate(H, result), words


def test_certificate_serialization_round_trip(B):
    H = SubgroupHandle.from_words(B, ["ba", "bb"])
    cert = prodense_projection_search(H)
    text = cert.serialize()
    parsed = parse_certificate(text)
    assert parsed == cert
    assert parsed.serialize() == text


def test_certificate_tampered_vertex(B):
    H = SubgroupHandle(B, list(B.generators()))
    cert = prodense_projection_search(H)
    truncated = ProdenseCertificate(
        subgroup=cert.subgroup,
        stages=cert.stages,
        vertex=cert.vertex[:-1],
        expr_a=cert.expr_a,
        expr_b=cert.expr_b,
        budgets=cert.budgets,
        engine=cert.engine,
    )
    assert not verify_certificate(H, truncated)


def test_certificate_foreign_generator(B):
    H = SubgroupHandle(B, list(B.generators()))
    cert = prodense_projection_search(H)
    foreign = ProdenseCertificate(
        subgroup=cert.subgroup,
        stages=cert.stages,
        vertex=cert.vertex,
        expr_a=cert.expr_a + (5,),
        expr_b=cert.expr_b,
        budgets=cert.budgets,
        engine=cert.engine,
    )
    with pytest.raises(InputError):
        verify_certificate(H, foreign)


def test_certificate_wrong_subgroup(B):
    H = SubgroupHandle(B, list(B.generators()))
    cert = prodense_projection_search(H)
    other = SubgroupHandle.from_words(B, ["ab", "bb"])
    assert not verify_certificate(other, cert)


def test_certificate_parse_errors(B):
    with pytest.raises(InputError):
        parse_certificate("not a certificate")
    with pytest.raises(InputError):
        parse_certificate("basilica-certificate: 1\n")


def test_search_reports_budgets(B):
    res = prodense_projection_search(
        SubgroupHandle(B, [B.element("ab")]), max_states=123, schreier_cap=7
    )
    assert res.budgets == {"states": 123, "schreier": 7, "depth": 16}
