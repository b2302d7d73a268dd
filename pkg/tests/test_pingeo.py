import itertools

import pytest

from halftwist import (
    I,
    ONE,
    PinSurfacePresentation,
    RibbonCurve,
    ZETA,
    abk,
    are_equivalent,
    dehn_twist_torus,
    parse_presentation,
    q_eval,
    render_presentation,
    self_linking,
    zeta_pow,
)


def all_presentations(max_rank):
    for g in range(max_rank // 2 + 1):
        for c in range(max_rank - 2 * g + 1):
            for tq in itertools.product(((0, 0), (0, 2), (2, 0), (2, 2)), repeat=g):
                for cq in itertools.product((1, 3), repeat=c):
                    yield PinSurfacePresentation(tq, cq)


def test_presentation_validation():
    with pytest.raises(ValueError):
        PinSurfacePresentation(((1, 0),), ())
    with pytest.raises(ValueError):
        PinSurfacePresentation((), (2,))
    p = PinSurfacePresentation(((0, 2),), (1, 3))
    assert p.rank == 4
    assert p.euler_characteristic == 2 - 2 - 2


def test_q_eval_examples():
    torus_rr = PinSurfacePresentation(((2, 2),), ())
    assert q_eval(torus_rr, (1, 1)) == 2
    assert q_eval(torus_rr, (0, 0)) == 0
    klein = PinSurfacePresentation((), (1, 1))
    assert q_eval(klein, (1, 1)) == 2  # the orientation-preserving curve
    with pytest.raises(ValueError):
        q_eval(klein, (1,))


def test_q_eval_is_quadratic_exhaustively():
    # q(x + y) = q(x) + q(y) + 2 <x, y> for all pairs, every presentation of
    # rank <= 6.  Values and pairings are tabulated once per presentation so
    # the quadratic identity itself stays the slow, explicit reference.
    for p in all_presentations(6):
        r = p.rank
        masks = [
            sum(p.pairing(i, j) << j for j in range(r)) for i in range(r)
        ]
        table = [
            q_eval(p, tuple((v >> i) & 1 for i in range(r))) for v in range(1 << r)
        ]
        for x in range(1 << r):
            for y in range(1 << r):
                pairing = 0
                rest = x
                while rest:
                    low = rest & -rest
                    pairing ^= (masks[low.bit_length() - 1] & y).bit_count() & 1
                    rest ^= low
                assert table[x ^ y] == (table[x] + table[y] + 2 * pairing) % 4, (
                    p,
                    x,
                    y,
                )


def test_q_eval_is_order_independent():
    # accumulate in a permuted basis order and compare
    p = PinSurfacePresentation(((0, 2), (2, 2)), (1, 3, 3))
    r = p.rank
    basis = p.basis_values()
    for x in itertools.product((0, 1), repeat=r):
        want = q_eval(p, x)
        for order in ((6, 5, 4, 3, 2, 1, 0), (3, 0, 6, 2, 5, 1, 4)):
            total = 0
            taken = []
            for idx in order:
                if not x[idx]:
                    continue
                total = (total + basis[idx] + 2 * sum(p.pairing(t, idx) for t in taken)) % 4
                taken.append(idx)
            assert total == want


def test_abk_projective_planes():
    assert abk(PinSurfacePresentation((), (1,))) == ZETA
    assert abk(PinSurfacePresentation((), (3,))) == zeta_pow(7)


def test_abk_torus_table():
    values = {(0, 0): ONE, (0, 2): ONE, (2, 0): ONE, (2, 2): -ONE}
    for pair, want in values.items():
        assert abk(PinSurfacePresentation((pair,), ())) == want


def test_abk_klein_table():
    values = {(1, 1): I, (1, 3): ONE, (3, 1): ONE, (3, 3): -I}
    for pair, want in values.items():
        assert abk(PinSurfacePresentation((), pair)) == want


def test_abk_sphere():
    assert abk(PinSurfacePresentation((), ())) == ONE


def test_abk_unit_modulus_and_conjugation():
    for p in all_presentations(6):
        value = abk(p)
        assert value * value.conjugate() == ONE
        negated = PinSurfacePresentation(
            tuple(((-qx) % 4, (-qy) % 4) for qx, qy in p.torus_q),
            tuple((-qz) % 4 for qz in p.crosscap_q),
        )
        assert abk(negated) == value.conjugate()


def test_abk_orientable_is_real_sign():
    for p in all_presentations(6):
        if p.crosscaps == 0:
            assert abk(p) in (ONE, -ONE)


def test_abk_rank_cap():
    with pytest.raises(ValueError, match="cap"):
        abk(PinSurfacePresentation(((0, 0),) * 11, ()))


def test_self_linking():
    assert self_linking(RibbonCurve(("rh_twist",))) == 1
    assert self_linking(RibbonCurve(("lh_twist", "lh_twist"))) == 2
    assert self_linking(RibbonCurve(("rh_twist",) * 3 + ("crossing",))) == 1
    assert self_linking(RibbonCurve(())) == 0
    with pytest.raises(ValueError):
        RibbonCurve(("loop",))


def test_are_equivalent():
    t = lambda qx, qy: PinSurfacePresentation(((qx, qy),), ())
    assert are_equivalent(t(0, 0), t(0, 2))
    assert not are_equivalent(t(0, 0), t(2, 2))
    k = lambda a, b: PinSurfacePresentation((), (a, b))
    assert are_equivalent(k(1, 3), k(3, 1))
    assert not are_equivalent(k(1, 1), k(3, 3))
    with pytest.raises(ValueError, match="different connect sums"):
        are_equivalent(t(0, 0), k(1, 1))


def test_dehn_twist():
    t = lambda qx, qy: PinSurfacePresentation(((qx, qy),), ())
    assert dehn_twist_torus(t(0, 0)) == t(0, 2)
    assert dehn_twist_torus(t(0, 2)) == t(0, 0)
    assert dehn_twist_torus(t(2, 2)) == t(2, 2)
    for pair in ((0, 0), (0, 2), (2, 0), (2, 2)):
        p = t(*pair)
        assert abk(dehn_twist_torus(p)) == abk(p)
    with pytest.raises(ValueError):
        dehn_twist_torus(PinSurfacePresentation((), (1,)))


@pytest.mark.parametrize(
    "literal",
    ["g=0,c=2,q=[|1,3]", "g=1,c=0,q=[0,2|]", "g=1,c=1,q=[2,2|3]", "g=0,c=0,q=[|]"],
)
def test_presentation_literal_round_trip(literal):
    p = parse_presentation(literal)
    assert parse_presentation(render_presentation(p)) == p


@pytest.mark.parametrize(
    "bad",
    ["", "g=1,c=0", "g=1,c=0,q=[0|]", "g=0,c=1,q=[|2]", "g=2,c=0,q=[0,0|]"],
)
def test_presentation_literal_rejects(bad):
    with pytest.raises(ValueError):
        parse_presentation(bad)
