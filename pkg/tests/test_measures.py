import numpy as np
import pytest
from scipy.special import j0 as scipy_j0, j1 as scipy_j1

from maxmul.bessel import bessel_j
from maxmul.measures import (
    AtomicMeasure,
    BallVolume,
    CantorLine,
    PointMass,
    RadialCompose,
    SphereSurface,
    atomize,
    beta_dimension_estimate,
    ft,
    ft_gradient,
    parse_measure,
)

ALL_SPECS = [
    PointMass((0.0, 0.0)),
    PointMass((1.0,)),
    SphereSurface(1, 1.0),
    SphereSurface(2, 1.0),
    SphereSurface(3, 1.0),
    BallVolume(1, 1.0),
    BallVolume(2, 1.0),
    BallVolume(3, 1.0),
    CantorLine(4),
    CantorLine(3),
    RadialCompose(CantorLine(4), 2, shift=0.5),
]


# ---------------------------------------------------------------- bessel

def test_bessel_matches_scipy():
    z = np.linspace(0.0, 200.0, 200001)
    assert np.max(np.abs(bessel_j(0, z) - scipy_j0(z))) < 1e-10
    assert np.max(np.abs(bessel_j(1, z) - scipy_j1(z))) < 1e-10


def test_bessel_at_zero():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0


def test_bessel_first_zero_by_bisection():
    lo, hi = 2.0, 3.0
    assert bessel_j(0, lo) > 0 > bessel_j(0, hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if bessel_j(0, mid) > 0:
            lo = mid
        else:
            hi = mid
    assert abs(0.5 * (lo + hi) - 2.404825557695773) < 1e-10


def test_bessel_near_switch_point():
    # both branches meet around z = 12 and at z = 50
    for z in (11.999, 12.0, 12.001, 49.999, 50.0, 50.001):
        assert abs(bessel_j(0, z) - scipy_j0(z)) < 1e-10
    assert abs(bessel_j(0, 50.0) - scipy_j0(50.0)) < 1e-10


def test_bessel_rejects():
    with pytest.raises(ValueError):
        bessel_j(2, 1.0)
    with pytest.raises(ValueError):
        bessel_j(0, -1.0)


# ---------------------------------------------------------------- transforms

def test_ft_at_zero_is_total_mass():
    for spec in ALL_SPECS:
        xi0 = np.zeros(spec.ambient_dim)
        assert abs(ft(spec, xi0) - 1.0) < 1e-12, spec.describe()


def test_hermitian_symmetry():
    rng = np.random.RandomState(0)
    for spec in ALL_SPECS:
        for _ in range(5):
            xi = rng.randn(spec.ambient_dim) * 3
            assert abs(ft(spec, -xi) - np.conj(ft(spec, xi))) < 1e-12


def test_pointmass_ft():
    pm = PointMass((0.25,))
    xi = 3.0
    assert abs(pm.ft(xi) - np.exp(-2j * np.pi * 0.25 * xi)) < 1e-14


def test_sphere3_sinc_zero():
    s3 = SphereSurface(3, 1.0)
    assert abs(s3.ft(np.array([0.5, 0.0, 0.0]))) < 1e-14


def _cantor_product(m, s, K=200):
    val = 1.0 + 0j
    for k in range(1, K + 1):
        val *= 0.5 * (1 + np.exp(-2j * np.pi * s / m**k))
    return val


def test_cantor_against_long_product():
    c = CantorLine(4)
    for s in (0.3, 1.0, 7.7, 64.0, 1000.0):
        assert abs(c.ft(s) - _cantor_product(4, s)) < 1e-11
    assert abs(abs(c.ft(1.0)) - 0.6926289126994456) < 1e-12


def test_cantor_scaling_identity_and_nondecay():
    c = CantorLine(4)
    xi = np.array([0.3, 1.7, 13.0, 250.0])
    lhs = c.ft(4 * xi)
    rhs = 0.5 * (1 + np.exp(-2j * np.pi * xi)) * c.ft(xi)
    assert np.max(np.abs(lhs - rhs)) < 1e-10
    base = abs(c.ft(1.0))
    for k in range(0, 9):
        assert abs(abs(c.ft(float(4**k))) - base) < 1e-10


def test_gradients_match_central_differences():
    rng = np.random.RandomState(7)
    for spec in ALL_SPECS:
        n = spec.ambient_dim
        worst = 0.0
        for _ in range(10):
            xi = rng.randn(n) * rng.choice([0.5, 3.0, 20.0])
            h = 1e-5 * (1 + np.linalg.norm(xi))
            num = np.zeros(n, dtype=complex)
            for i in range(n):
                e = np.zeros(n)
                e[i] = h
                num[i] = (ft(spec, xi + e) - ft(spec, xi - e)) / (2 * h)
            got = np.atleast_1d(ft_gradient(spec, xi))
            denom = max(np.max(np.abs(num)), 1e-10)
            worst = max(worst, float(np.max(np.abs(got - num)) / denom))
        assert worst < 1e-5, spec.describe()


def test_pointmass_gradient_closed_form():
    pm = PointMass((1.0,))
    g = pm.ft_gradient(np.array([0.7]))
    expect = -2j * np.pi * 1.0 * np.exp(-2j * np.pi * 0.7)
    assert abs(g[0] - expect) < 1e-14


def test_circle_gradient_closed_form():
    circ = SphereSurface(2, 1.0)
    s = 1.0
    g = circ.ft_gradient(np.array([s, 0.0]))
    assert abs(g[0] - (-2 * np.pi * bessel_j(1, 2 * np.pi * s))) < 1e-12
    assert abs(g[1]) < 1e-14


# ---------------------------------------------------------------- atoms

def test_atomize_pointmass():
    atoms = PointMass((0.0, 0.0)).atomize()
    assert atoms.points.shape == (1, 2)
    assert atoms.weights[0] == 1.0


def test_atomize_cantor_level2():
    atoms = CantorLine(4).atomize(2)
    assert np.allclose(np.sort(atoms.points.ravel()), [0.0, 1 / 16, 1 / 4, 5 / 16])
    assert np.allclose(atoms.weights, 0.25)


def test_atomize_circle():
    atoms = atomize(SphereSurface(2, 1.0), 3)
    assert atoms.points.shape == (8, 2)
    assert abs(atoms.total_mass - 1.0) < 1e-12
    assert np.allclose(np.linalg.norm(atoms.points, axis=1), 1.0)


def test_atomic_weights_positive_and_sum():
    for spec, K in [
        (SphereSurface(2, 1.0), 8),
        (SphereSurface(3, 1.0), 8),
        (BallVolume(2, 1.0), 8),
        (CantorLine(4), 8),
        (RadialCompose(CantorLine(4), 2, shift=0.5), 6),
    ]:
        atoms = spec.atomize(K)
        assert np.all(atoms.weights > 0)
        assert abs(atoms.total_mass - 1.0) < 1e-12


# documented resolution for the <1e-3 atomic-consistency contract at |xi|<=64
_CONSISTENCY = [
    (PointMass((0.5, 0.5)), 0, 1e-12),
    (SphereSurface(1, 1.0), 4, 1e-12),
    (SphereSurface(2, 1.0), 12, 1e-10),
    (SphereSurface(3, 1.0), 18, 1e-10),
    (BallVolume(2, 1.0), 18, 1e-10),
    (CantorLine(4), 10, 1e-3),
    (RadialCompose(CantorLine(4), 2, shift=0.5), 10, 1e-3),
]


@pytest.mark.parametrize("spec,K,tol", _CONSISTENCY, ids=lambda v: str(v)[:24])
def test_atomic_consistency(spec, K, tol):
    atoms = spec.atomize(K) if K else spec.atomize()
    rng = np.random.RandomState(11)
    n = spec.ambient_dim
    for _ in range(6):
        u = rng.randn(n)
        u /= np.linalg.norm(u)
        xi = u * rng.uniform(0.5, 64.0)
        assert abs(ft(spec, xi) - atoms.ft(xi)) < tol


def test_atomic_consistency_improves_with_level():
    c = CantorLine(4)
    xi = 37.3
    errs = [abs(c.ft(xi) - c.atomize(K).ft(xi)) for K in (6, 8, 10, 12)]
    assert errs[0] > errs[-1]
    assert errs[-1] < 1e-4


# ---------------------------------------------------------------- dimension

def test_beta_pointmass():
    fit = beta_dimension_estimate(PointMass((0.0, 0.0)).atomize(), [2.0**-k for k in range(1, 6)])
    assert fit.beta == 0.0
    assert fit.warning is not None


def test_beta_circle():
    fit = beta_dimension_estimate(SphereSurface(2, 1.0).atomize(12), [2.0**-k for k in range(1, 6)])
    assert abs(fit.beta - 1.0) < 0.1


def test_beta_cantor_radial():
    atoms = RadialCompose(CantorLine(4), 2, shift=0.5).atomize(8)
    fit = beta_dimension_estimate(atoms, [2.0**-k for k in range(2, 8)])
    assert abs(fit.beta - 1.5) < 0.15


def test_beta_disk_near_ambient_dimension():
    atoms = BallVolume(2, 1.0).atomize(14)
    fit = beta_dimension_estimate(atoms, [2.0**-k for k in range(1, 6)], max_centers=512)
    assert abs(fit.beta - 2.0) < 0.15


def test_beta_validation():
    atoms = SphereSurface(2, 1.0).atomize(8)
    with pytest.raises(ValueError):
        beta_dimension_estimate(atoms, [0.5, 0.25])  # too few radii
    with pytest.raises(ValueError):
        beta_dimension_estimate(atoms, [0.5, 0.4, 0.3, 0.25])  # < 3 octaves


# ---------------------------------------------------------------- parsing

def test_parse_measure_presets():
    assert isinstance(parse_measure("delta", ambient=2), PointMass)
    circ = parse_measure("circle:r=0.5")
    assert isinstance(circ, SphereSurface) and circ.radius == 0.5
    assert isinstance(parse_measure("sphere3:r=1"), SphereSurface)
    assert isinstance(parse_measure("disk:r=1"), BallVolume)
    cant = parse_measure("cantor:m=5")
    assert isinstance(cant, CantorLine) and cant.m == 5
    cr = parse_measure("cantor-radial:m=4,n=2")
    assert isinstance(cr, RadialCompose) and cr.shift == 0.5


def test_parse_measure_rejects():
    with pytest.raises(ValueError):
        parse_measure("torus:r=1")
    with pytest.raises(ValueError):
        parse_measure("circle:radius=1")


def test_spec_validation():
    with pytest.raises(ValueError):
        CantorLine(2)
    with pytest.raises(ValueError):
        SphereSurface(2, 3.0)  # support ball constraint
    with pytest.raises(ValueError):
        RadialCompose(CantorLine(4), 2, shift=0.8)  # pushes past [0, 1]
    with pytest.raises(ValueError):
        AtomicMeasure(np.zeros((2, 1)), np.array([0.5, -0.5]))
