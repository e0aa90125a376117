import random
from fractions import Fraction

import pytest

from pmech.errors import DimensionMismatch
from pmech.heisenberg import (
    CoadjointPoint,
    DGroupElement,
    HGroupElement,
    classical_rep_phase,
    coadjoint,
    dn_multiply,
    hn_identity,
    hn_inverse,
    hn_multiply,
    phase_value,
    symplectic_form,
)


def random_element(rng, n=1):
    coord = lambda: Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return HGroupElement(coord(), [coord() for _ in range(n)], [coord() for _ in range(n)])


def test_symplectic_examples():
    assert symplectic_form([1], [0], [0], [1]) == 1
    assert symplectic_form([2], [3], [2], [3]) == 0
    assert symplectic_form([2, 0], [0, 1], [1, 1], [1, 0]) == 1


def test_symplectic_bilinear_antisymmetric():
    rng = random.Random(3)
    for _ in range(30):
        g, h = random_element(rng, 2), random_element(rng, 2)
        assert symplectic_form(g.x, g.y, h.x, h.y) == -symplectic_form(h.x, h.y, g.x, g.y)
        two_x = [2 * v for v in g.x]
        two_y = [2 * v for v in g.y]
        assert symplectic_form(two_x, two_y, h.x, h.y) == 2 * symplectic_form(g.x, g.y, h.x, h.y)


def test_symplectic_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        symplectic_form([1], [0], [0, 1], [1, 0])


def test_group_law_example():
    g = HGroupElement(0, [1], [0])
    h = HGroupElement(0, [0], [1])
    assert hn_multiply(g, h) == HGroupElement(Fraction(1, 2), [1], [1])


def test_identity_and_inverse():
    rng = random.Random(4)
    for _ in range(20):
        g = random_element(rng)
        assert hn_multiply(g, hn_identity(1)) == g
        assert hn_multiply(hn_identity(1), g) == g
        assert hn_multiply(g, hn_inverse(g)) == hn_identity(1)


def test_associativity():
    rng = random.Random(5)
    for _ in range(25):
        g, h, k = (random_element(rng, 2) for _ in range(3))
        assert hn_multiply(hn_multiply(g, h), k) == hn_multiply(g, hn_multiply(h, k))


def test_dn_componentwise():
    g = DGroupElement(HGroupElement(0, [1], [0]), HGroupElement(0, [0], [0]))
    h = DGroupElement(HGroupElement(0, [0], [1]), HGroupElement(0, [0], [0]))
    expected = DGroupElement(
        HGroupElement(Fraction(1, 2), [1], [1]), HGroupElement(0, [0], [0])
    )
    assert dn_multiply(g, h) == expected


def test_dn_centre_commutes():
    rng = random.Random(6)
    centre = DGroupElement(
        HGroupElement(Fraction(3, 2), [0], [0]), HGroupElement(-2, [0], [0])
    )
    for _ in range(20):
        d = DGroupElement(random_element(rng), random_element(rng))
        assert dn_multiply(centre, d) == dn_multiply(d, centre)


def test_coadjoint_example():
    g = HGroupElement(0, [1], [0])
    f = CoadjointPoint(1, [0], [0])
    assert coadjoint(g, f) == CoadjointPoint(1, [0], [-1])


def test_coadjoint_fixes_hbar_zero():
    rng = random.Random(7)
    for _ in range(20):
        g = random_element(rng)
        f = CoadjointPoint(0, [Fraction(1, 3)], [Fraction(-2)])
        assert coadjoint(g, f) == f


def test_coadjoint_is_left_action():
    rng = random.Random(8)
    for _ in range(25):
        g, h = random_element(rng), random_element(rng)
        f = CoadjointPoint(Fraction(rng.randint(1, 5)), [Fraction(rng.randint(-3, 3))],
                           [Fraction(rng.randint(-3, 3))])
        assert coadjoint(hn_multiply(g, h), f) == coadjoint(g, coadjoint(h, f))


def test_coadjoint_orbit_witness():
    # with hbar nonzero, an explicit g carries (q, p) to any (q', p')
    hbar = Fraction(3, 2)
    f = CoadjointPoint(hbar, [1], [2])
    target_q, target_p = Fraction(-5), Fraction(7, 3)
    g = HGroupElement(
        0,
        [(f.p[0] - target_p) / hbar],
        [(target_q - f.q[0]) / hbar],
    )
    assert coadjoint(g, f) == CoadjointPoint(hbar, [target_q], [target_p])


def test_phase_kills_centre():
    for s in (0, 1, Fraction(-7, 2)):
        g = HGroupElement(s, [0], [0])
        assert classical_rep_phase([3], [4], g) == 0


def test_phase_example():
    g = HGroupElement(5, [Fraction(1, 2)], [3])
    theta = classical_rep_phase([1], [0], g)
    assert theta == Fraction(1, 2)
    assert abs(phase_value(theta) - (-1)) < 1e-12


def test_phase_homomorphism():
    rng = random.Random(9)
    qp = ([Fraction(2, 3)], [Fraction(-1, 2)])
    for _ in range(25):
        g, h = random_element(rng), random_element(rng)
        total = classical_rep_phase(*qp, hn_multiply(g, h))
        assert total == classical_rep_phase(*qp, g) + classical_rep_phase(*qp, h)
