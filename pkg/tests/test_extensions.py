import math

import pytest

from weyl import extensions, models
from weyl.errors import BoundaryZeroError, ContractError, SpectralPointError
from weyl.linalg import Matrix
from weyl.slsolve import PotentialSpec
from weyl.specfun import sqrt_upper

Q0 = PotentialSpec.zero()


def stub_sqrt_model():
    return models.callable_model(lambda z: Matrix.scalar(1j * sqrt_upper(z)), 1, ess_floor=0.0)


def test_extension_flags():
    hl = models.half_line(Q0)
    assert extensions.extension(hl, -1.0).is_hermitian
    spec = extensions.extension(hl, 1j)
    assert not spec.is_hermitian and spec.is_dissipative


def test_point_spectrum_requires_hermitian_b():
    hl = models.half_line(Q0)
    with pytest.raises(ContractError):
        extensions.point_spectrum_real(extensions.extension(hl, 1j), (-2.0, -0.1))


def test_point_spectrum_window_validation():
    hl = models.half_line(Q0)
    with pytest.raises(ContractError):
        extensions.point_spectrum_real(extensions.extension(hl, -1.0), (-2.0, 0.5))
    with pytest.raises(ContractError):
        extensions.point_spectrum_real(extensions.extension(hl, -1.0), (-2.0, -0.1), grid_n=32)


def test_robin_bound_state_location():
    hl = models.half_line(Q0)
    rep = extensions.point_spectrum_real(extensions.extension(hl, -1.5), (-4.0, -0.1))
    assert len(rep.eigenvalues) == 1
    assert abs(rep.eigenvalues[0][0] + 2.25) < 1e-8


def test_interval_collision_spectrum():
    fi = models.finite_interval(Q0, math.pi)
    rep = extensions.point_spectrum_real(
        extensions.ExtensionSpec(fi, Matrix.zeros(2, 2)), (0.5, 9.5)
    )
    locs = [x for x, _ in rep.eigenvalues]
    assert [round(x) for x in locs] == [1, 4, 9]
    assert all(m == 1 for _, m in rep.eigenvalues)
    assert rep.method == "real_scan_entire_det"


def test_interval_mixed_conditions():
    # y'(0) = 0, y(pi) free-Robin: first Neumann-Dirichlet-type spectrum
    fi = models.finite_interval(Q0, math.pi)
    big = 1e6
    rep = extensions.point_spectrum_real(
        extensions.ExtensionSpec(fi, Matrix.diag([0.0, -big])), (0.1, 3.0), grid_n=256
    )
    # B22 -> -inf forces y(pi) ~ 0: Neumann-Dirichlet eigenvalue 1/4
    assert any(abs(x - 0.25) < 1e-3 for x, _ in rep.eigenvalues)


def test_count_complex_stub_boundary_proximity():
    spec = extensions.ExtensionSpec(stub_sqrt_model(), Matrix.scalar(1j))
    rep = extensions.count_complex_eigenvalues(spec, (0.5, 1.5, 0.001, 1.0))
    # the zero of i sqrt(z) - i sits at z = 1 on the real axis: not inside,
    # but the contour passes within 1e-3 of it
    assert rep.count == 0
    assert rep.boundary_proximity


def test_count_complex_hermitian_is_zero():
    spec = extensions.ExtensionSpec(stub_sqrt_model(), Matrix.scalar(-1.0))
    rep = extensions.count_complex_eigenvalues(spec, (-2.0, 2.0, 0.3, 3.0))
    assert rep.count == 0


def test_count_complex_interior_zero_detected():
    # M(z) = z has det(M - B) = z - (1+i): one zero inside the rectangle
    lin = models.callable_model(lambda z: Matrix.scalar(z), 1, ess_floor=-math.inf)
    spec = extensions.ExtensionSpec(lin, Matrix.scalar(1.0 + 1.0j))
    rep = extensions.count_complex_eigenvalues(spec, (0.0, 2.0, 0.5, 1.5))
    assert rep.count == 1
    rep = extensions.count_complex_eigenvalues(spec, (2.0, 4.0, 0.5, 1.5))
    assert rep.count == 0


def test_count_complex_boundary_zero_error():
    lin = models.callable_model(lambda z: Matrix.scalar(z), 1, ess_floor=-math.inf)
    spec = extensions.ExtensionSpec(lin, Matrix.scalar(1.0 + 0.5j))
    with pytest.raises(BoundaryZeroError):
        extensions.count_complex_eigenvalues(spec, (0.0, 1.0, 0.5, 1.5))


def test_count_complex_real_model_no_interior_zero():
    hl = models.half_line(Q0)
    spec = extensions.extension(hl, 2j)
    rep = extensions.count_complex_eigenvalues(spec, (3.0, 5.0, 0.5, 2.0))
    assert rep.count == 0


def test_negative_count_requires_nonnegative_reference():
    deep = models.half_line(PotentialSpec.square_well(-5.0, 1.2))  # Dirichlet bound state
    with pytest.raises(ContractError):
        extensions.negative_count(extensions.extension(deep, 0.0))


def test_negative_count_dissipative_rejected():
    hl = models.half_line(Q0)
    with pytest.raises(ContractError):
        extensions.negative_count(extensions.extension(hl, 1j))


def test_krein_extension_nonnegative():
    hl = models.half_line(Q0)
    kr = extensions.krein_extension(hl)
    k_m, k_o = extensions.negative_count(kr)
    assert k_m == 0 and k_o == 0


def test_rank_law_spectral_point_error():
    hl = models.half_line(Q0)
    s1 = extensions.extension(hl, -1.0)
    s2 = extensions.extension(hl, 1.0)
    with pytest.raises(SpectralPointError):
        # zeta = eigenvalue of B2 = 1: (B2 - zeta) singular
        extensions.resolvent_rank_law(s1, s2, 1j, 1.0)


def test_rank_law_requires_shared_model():
    s1 = extensions.extension(models.half_line(Q0), -1.0)
    s2 = extensions.extension(models.sector(0.75), -1.0)
    with pytest.raises(ContractError):
        extensions.resolvent_rank_law(s1, s2, 1j, 2j)


def test_scan_sign_changes_quadratic_touch_missed():
    # documented limitation: even-order zeros without sign change are not
    # bracketed (unless a grid point lands on them exactly)
    roots = extensions.scan_sign_changes(lambda x: (x - 0.9876) ** 2, 0.0, 2.0, 64)
    assert roots == []
    roots = extensions.scan_sign_changes(lambda x: x - 0.9876, 0.0, 2.0, 64)
    assert len(roots) == 1 and abs(roots[0] - 0.9876) < 1e-9


def test_spectrum_report_oracle_delta_shape():
    hl = models.half_line(Q0)
    rep = extensions.point_spectrum_real(
        extensions.extension(hl, -2.0), (-6.0, -0.1), compare_oracle=True
    )
    assert rep.oracle_delta is not None and len(rep.oracle_delta) == len(rep.eigenvalues)
