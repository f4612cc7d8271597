import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import lin3, swap3, wada3
from oracles import naive_is_biquandle
from vbq.algebra import (
    OperatorTable,
    cyclic_group,
    derive_vr,
    homomorphisms,
    identity_operator,
    invert_operator,
    is_biquandle,
    is_homomorphism,
    linear_biquandle,
    swap_operator,
    symmetric_group,
    validate_biquandle,
    validate_virtual,
    virtual,
    wada_from_group,
)
from vbq.enumeration import enumerate_biquandles, enumerate_virtual
from vbq.errors import AxiomError, ParameterError, StructureError


def table(n, fn):
    return OperatorTable.from_function(n, fn)


# --- OperatorTable ---------------------------------------------------------

def test_table_rejects_out_of_range_entry():
    with pytest.raises(StructureError):
        OperatorTable.from_rows([[0, 1, 2], [0, 1, 2], [0, 1, 7]], [[0] * 3, [1] * 3, [2] * 3])


def test_table_rejects_ragged_rows():
    with pytest.raises(StructureError):
        OperatorTable.from_rows([[0, 1], [0]], [[0, 0], [1, 1]])


def test_table_call_and_rows():
    op = linear_biquandle(3, 1, 2)
    assert op(1, 2) == (2, 0)
    assert op.rows(1) == [[0, 1, 2]] * 3


# --- validate_biquandle ----------------------------------------------------

def test_swap_on_three_points_passes_every_axiom():
    rep = validate_biquandle(swap_operator(3))
    assert rep.ok and len(rep.verdicts) == 6
    assert rep.structure.fixed_pairs == ((0, 0), (1, 1), (2, 2))


def test_identity_on_two_points_fails_type_one_with_witness():
    rep = validate_biquandle(identity_operator(2))
    assert not rep.ok
    v = rep["type I"]
    assert not v.passed
    assert v.witness == (0, (0, 1))
    assert [w.name for w in rep.failed()] == [
        "left-invertible", "right-invertible", "type I", "type I (dual form)"]


def test_linear_three_passes():
    op = linear_biquandle(3, 1, 2)
    assert op == table(3, lambda x, y: (y, (2 * x + 2 * y) % 3))
    assert validate_biquandle(op).ok


def test_report_lists_all_failures_not_just_first():
    # constant operator breaks everything but left/right-invertibility are also broken
    op = table(2, lambda x, y: (0, 0))
    names = {v.name for v in validate_biquandle(op).failed()}
    assert {"invertible", "left-invertible", "right-invertible"} <= names


def test_yang_baxter_witness_is_checkable():
    # R(x,y) = (y, x+y) is invertible with Latin sections but fails YBE
    op = table(3, lambda x, y: (y, (x + y) % 3))
    v = validate_biquandle(op)["yang-baxter"]
    assert not v.passed
    x, y, z = v.witness
    R = op

    def lhs(t):
        a, b = R(t[0], t[1]); t = (a, b, t[2])
        a, b = R(t[1], t[2]); t = (t[0], a, b)
        a, b = R(t[0], t[1]); return (a, b, t[2])

    def rhs(t):
        a, b = R(t[1], t[2]); t = (t[0], a, b)
        a, b = R(t[0], t[1]); t = (a, b, t[2])
        a, b = R(t[1], t[2]); return (t[0], a, b)

    assert lhs((x, y, z)) != rhs((x, y, z))


def test_one_point_carrier_is_a_biquandle():
    assert validate_biquandle(OperatorTable(1, (0,), (0,))).ok


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), min_size=2 * n * n, max_size=2 * n * n))))
def test_validator_agrees_with_naive_checker(case):
    n, flat = case
    r1, r2 = tuple(flat[: n * n]), tuple(flat[n * n:])
    op = OperatorTable(n, r1, r2)
    expected = naive_is_biquandle(r1, r2, n)
    assert validate_biquandle(op).ok == expected
    assert is_biquandle(op) == expected


def test_type_one_forms_agree_on_catalog():
    for n in (1, 2, 3):
        for op in enumerate_biquandles(n):
            rep = validate_biquandle(op)
            assert rep["type I"].passed and rep["type I (dual form)"].passed
            fixed = [(x, a) for x in range(n) for a in range(n) if op(x, a) == (x, a)]
            assert len(fixed) == n
            assert sorted(x for x, _ in fixed) == list(range(n))
            assert sorted(a for _, a in fixed) == list(range(n))


def test_division_tables_invert_sections():
    for n in (2, 3):
        for op in enumerate_biquandles(n):
            bq = validate_biquandle(op).structure
            for x, y in itertools.product(range(n), repeat=2):
                u, v = op(x, y)
                assert bq.left_div[x * n + u] == y
                assert bq.right_div[y * n + v] == x


# --- invert_operator --------------------------------------------------------

def test_inverse_of_swap_is_swap():
    op = swap_operator(3)
    assert invert_operator(op) == (op.r1, op.r2)


def test_inverse_of_linear_three():
    r1b, r2b = invert_operator(linear_biquandle(3, 1, 2))
    for u, v in itertools.product(range(3), repeat=2):
        assert (r1b[u * 3 + v], r2b[u * 3 + v]) == ((2 * u + 2 * v) % 3, u)


def test_inverse_of_identity():
    op = identity_operator(2)
    assert invert_operator(op) == (op.r1, op.r2)


def test_inverse_reports_collision():
    with pytest.raises(StructureError, match="not invertible"):
        invert_operator(table(2, lambda x, y: (0, y)))


# --- validate_virtual --------------------------------------------------------

def test_linear_with_shift_is_virtual():
    assert validate_virtual(linear_biquandle(3, 1, 2), (1, 2, 0)).ok


@pytest.mark.parametrize("f", list(itertools.permutations(range(3))))
def test_swap_accepts_every_permutation(f):
    assert validate_virtual(swap_operator(3), f).ok


def test_non_automorphism_fails_with_witness():
    # x -> x+1 is not an automorphism of the Wada operator on Z3
    op = wada_from_group(cyclic_group(3))
    rep = validate_virtual(op, (1, 2, 0))
    v = rep["f automorphism"]
    assert not v.passed
    x, y = v.witness
    f = (1, 2, 0)
    assert op(f[x], f[y]) != tuple(f[t] for t in op(x, y))
    with pytest.raises(AxiomError):
        virtual(op, f)


@pytest.mark.parametrize("f", list(itertools.permutations(range(3))))
def test_linear_three_accepts_every_permutation(f):
    # every permutation of Z3 is affine (x -> ax + b) and both rows of the
    # linear matrix sum to 1, so each one commutes with R; (0 1) included
    op = linear_biquandle(3, 1, 2)
    assert all(op(f[x], f[y]) == tuple(f[t] for t in op(x, y)) for x in range(3) for y in range(3))
    assert validate_virtual(op, f).ok


def test_f_must_be_a_permutation():
    with pytest.raises(StructureError):
        validate_virtual(swap_operator(3), (0, 0, 1))


# --- derive_vr -------------------------------------------------------------

def test_vr_with_identity_is_r():
    for op in enumerate_biquandles(2):
        assert derive_vr(virtual(op)) == op


def test_vr_of_swap_with_shift():
    vr = derive_vr(swap3((1, 2, 0)))
    assert vr == table(3, lambda x, y: ((y + 1) % 3, (x - 1) % 3))


def test_vr_of_linear_with_shift():
    vr = derive_vr(lin3())
    assert vr == table(3, lambda x, y: ((y + 1) % 3, (2 * x + 2 * y + 1) % 3))


def test_vr_is_virtual_biquandle_on_catalog():
    for n in (1, 2, 3):
        for op, f in enumerate_virtual(n):
            vr = derive_vr(virtual(op, f))
            assert validate_biquandle(vr).ok
            assert validate_virtual(vr, f).ok


def test_vr_functoriality():
    structs = [virtual(op, f) for n in (1, 2) for op, f in enumerate_virtual(n)]
    structs += [virtual(op, f) for op, f in enumerate_virtual(3, up_to_iso=True)][:12]
    checked = 0
    for src in structs:
        for dst in structs:
            if src.n > 2 and dst.n > 2:
                continue
            vsrc, vdst = virtual(derive_vr(src), src.f), virtual(derive_vr(dst), dst.f)
            for h in homomorphisms(src, dst):
                assert is_homomorphism(h, vsrc, vdst)
                checked += 1
    assert checked > 50


# --- homomorphisms -----------------------------------------------------------

def test_identity_map_is_homomorphism():
    for v in (lin3(), wada3(), swap3()):
        assert is_homomorphism(range(3), v, v)


@pytest.mark.parametrize("c", range(3))
def test_constant_map_into_swap(c):
    assert is_homomorphism([c] * 3, lin3(), virtual(swap_operator(3)))


def test_doubling_is_wada_endomorphism():
    w = wada3((0, 1, 2))
    assert is_homomorphism([0, 2, 1], w, w)


# --- example families --------------------------------------------------------

def test_wada_z3():
    assert wada_from_group(cyclic_group(3)) == table(3, lambda x, y: ((-y) % 3, (x + 2 * y) % 3))


def test_wada_z2_is_swap():
    assert wada_from_group(cyclic_group(2)) == swap_operator(2)


def test_wada_s3_is_biquandle():
    op = wada_from_group(symmetric_group(3))
    assert op.n == 6 and validate_biquandle(op).ok


def test_wada_rejects_non_group():
    bad = [[0, 1, 2], [1, 1, 0], [2, 0, 1]]
    with pytest.raises(StructureError, match="axiom|fails"):
        wada_from_group(bad)


def test_linear_z2_is_swap():
    assert linear_biquandle(2, 1, 1) == swap_operator(2)


def test_linear_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        linear_biquandle(3, 2, 2)
    with pytest.raises(ParameterError):
        linear_biquandle(4, 2, 1)


@pytest.mark.parametrize("n,a,b", [(3, 1, 2), (4, 1, 3), (5, 1, 4), (5, 2, 1), (6, 1, 5)])
def test_linear_family_validates(n, a, b):
    assert validate_biquandle(linear_biquandle(n, a, b)).ok


def test_relabel_preserves_validity():
    op = wada_from_group(cyclic_group(3))
    for sigma in itertools.permutations(range(3)):
        assert validate_biquandle(op.relabel(sigma)).ok


def test_type_one_forms_never_diverge_on_biracks():
    # among operators meeting every other axiom at n <= 3, the two forms of
    # the type I condition accept exactly the same tables
    for n in (2, 3):
        perms = list(itertools.permutations(range(n)))
        for rows in itertools.product(perms, repeat=n):
            r1 = tuple(v for row in rows for v in row)
            for cols in itertools.product(perms, repeat=n):
                r2 = tuple(cols[y][x] for x in range(n) for y in range(n))
                rep = validate_biquandle(OperatorTable(n, r1, r2))
                if rep["yang-baxter"].passed and rep["invertible"].passed:
                    assert rep["type I"].passed == rep["type I (dual form)"].passed, (r1, r2)
