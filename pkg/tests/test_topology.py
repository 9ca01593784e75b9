import pytest

from prequant_ech import Bundle, gamma_class_count, homology_of_total_space


def test_bundle_invariants():
    b = Bundle(3, -2)
    assert b.chi() == -4
    assert b.abs_e() == 2
    for bad in [(-1, -1), (1, 0), (1, 2)]:
        with pytest.raises(ValueError):
            Bundle(*bad)


def test_sphere_euler_one_has_no_torsion():
    assert homology_of_total_space(Bundle(0, -1))[1] == (0, ())


def test_genus_two_euler_three():
    h = homology_of_total_space(Bundle(2, -3))
    assert h[0] == (1, ())
    assert h[1] == (4, (3,))
    assert h[2] == (4, ())
    assert h[3] == (1, ())


def test_lens_space():
    assert homology_of_total_space(Bundle(0, -5))[1] == (0, (5,))


@pytest.mark.parametrize("g", range(5))
@pytest.mark.parametrize("n", range(1, 7))
def test_homology_shape(g, n):
    b = Bundle(g, -n)
    h = homology_of_total_space(b)
    assert len(h) == 4
    assert h[0] == h[3] == (1, ())
    assert h[2] == (2 * g, ())
    assert h[1][0] == 2 * g
    if n > 1:
        assert h[1][1] == (b.abs_e(),)
    else:
        assert h[1][1] == ()


@pytest.mark.parametrize("g,e,count", [(1, -4, 4), (0, -1, 1), (3, -2, 2)])
def test_gamma_class_count(g, e, count):
    assert gamma_class_count(Bundle(g, e)) == count
