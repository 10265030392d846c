import cmath
import math
import random

import pytest

from holofol import (
    ComplexPoint,
    SaitoSuzukiParams,
    UniPoly,
    build_H,
    conservation_check,
    elapsed_time_via_tau,
    escape_profile,
    eval_field,
    first_integral_xy,
    integrate_ray,
    parse_vector_field,
    times_form,
    trace_to_csv_rows,
)
from holofol.errors import NearPole, PathThroughSingularity, UndefinedOnTrace
from holofol.normal_forms import PulledBackRiccati
from holofol.scalars import GaussianRational as GR

from conftest import SEED

CATALOG_X = parse_vector_field("x*(1+x*y) d/dx + y*(1-x*y) d/dy")
SADDLE = parse_vector_field("x d/dx + -y d/dy")
SADDLE_PARAMS = SaitoSuzukiParams(m=1, n=1, l=0)


def catalog_G():
    pb = PulledBackRiccati(
        k=0, a=UniPoly("v", {0: GR(1), 1: GR(1)}), c=GR(2), N=1, n=1
    )
    return first_integral_xy(SADDLE_PARAMS, pb)


def test_eval_field():
    assert eval_field(SADDLE, ComplexPoint(2.0, 3.0)) == (2.0, -3.0)
    assert eval_field(CATALOG_X, ComplexPoint(1.0, 1.0)) == (2.0, 0.0)
    pole = parse_vector_field("(1/x) d/dx + 0 d/dy")
    with pytest.raises(NearPole):
        eval_field(pole, ComplexPoint(0.0, 0.0))


def test_saddle_oracle():
    tr = integrate_ray(SADDLE, ComplexPoint(1.0, 1.0), 1.0, 1.0, 1e-10)
    assert tr.status == "completed"
    end = tr.endpoint
    err = abs(end.x - math.e) + abs(end.y - 1 / math.e)
    assert err < 10 * 1e-10


def test_blowup_oracle():
    X = parse_vector_field("x^2 d/dx + y d/dy")
    tr = integrate_ray(X, ComplexPoint(1.0, 1.0), 1.0, 0.5, 1e-10)
    assert abs(tr.endpoint.x - 2.0) < 10 * 1e-10  # x(t) = 1/(1-t)


def test_zero_length_trace():
    tr = integrate_ray(SADDLE, ComplexPoint(1.0, 1.0), 1.0, 0.0, 1e-10)
    assert tr.status == "completed"
    assert len(tr.samples) == 1


def test_complex_direction():
    d = cmath.exp(1j * math.pi / 4)
    tr = integrate_ray(SADDLE, ComplexPoint(1.0, 1.0), d, 1.0, 1e-10)
    assert abs(tr.endpoint.x - cmath.exp(d)) < 1e-8


def test_escape_status():
    X = parse_vector_field("x^2 d/dx + 0 d/dy")
    tr = integrate_ray(X, ComplexPoint(1.0, 0.0), 1.0, 2.0, 1e-8)
    assert tr.status in ("escaped", "singular")


def test_order_of_convergence_fixed_step():
    errs = []
    for h in (0.05, 0.025):
        tr = integrate_ray(
            SADDLE, ComplexPoint(1.0, 1.0), 1.0, 1.0, 1e-3, fixed_step=h
        )
        errs.append(abs(tr.endpoint.x - math.e))
    assert errs[0] / errs[1] > 2**4  # at least order 4


def test_adaptive_tolerance_scaling():
    errs = []
    for tol in (1e-6, 1e-6 / 16):
        tr = integrate_ray(SADDLE, ComplexPoint(1.0, 1.0), 1.0, 1.0, tol)
        errs.append(abs(tr.endpoint.x - math.e))
    assert errs[0] / errs[1] >= 8


def test_reversibility():
    tol = 1e-10
    fwd = integrate_ray(CATALOG_X, ComplexPoint(1.0, 1.0), 1.0, 0.7, tol)
    back = integrate_ray(CATALOG_X, fwd.endpoint, -1.0, 0.7, tol)
    err = abs(back.endpoint.x - 1.0) + abs(back.endpoint.y - 1.0)
    assert err < 1e2 * tol


def test_conservation_catalog():
    G = catalog_G()
    tr = integrate_ray(
        CATALOG_X, ComplexPoint(1.0, 1.0), 1.0, 1.0, 1e-10, first_integral=G
    )
    drift = conservation_check(tr, G)
    assert drift < 1e-8

    # xy is conserved along the saddle
    from holofol.first_integral import FirstIntegralForm
    from holofol import parse_polynomial
    from holofol.foliation import XY

    # G = x^2 e^0 / (xy) = x/y is NOT conserved: drift O(1)
    G2 = FirstIntegralForm(
        q_hat=2,
        p_hat=1,
        n=1,
        sbar=UniPoly.zero("z"),
        sigma=UniPoly.zero("z"),
        P=parse_polynomial("x*y", vars=XY),
    )
    tr = integrate_ray(SADDLE, ComplexPoint(1.0, 1.0), 1.0, 1.0, 1e-10)
    assert conservation_check(tr, G2) > 0.1


def test_conservation_undefined_on_trace():
    G = catalog_G()
    tr = integrate_ray(SADDLE, ComplexPoint(1.0, 0.0), 1.0, 0.3, 1e-8)
    with pytest.raises(UndefinedOnTrace):
        conservation_check(tr, G)  # y = 0 all along: G has a pole


def test_elapsed_time_via_tau():
    tf = times_form(CATALOG_X, SADDLE_PARAMS)
    for T in (0.5, 1.0):
        tr = integrate_ray(CATALOG_X, ComplexPoint(1.0, 1.0), 1.0, T, 1e-10)
        elapsed = elapsed_time_via_tau(tf, tr)
        assert abs(elapsed - T) < 1e-5


def test_elapsed_time_singular_path():
    tf = times_form(CATALOG_X, SADDLE_PARAMS)
    tr = integrate_ray(CATALOG_X, ComplexPoint(1.0, 0.0), 1.0, 0.3, 1e-8)
    with pytest.raises(PathThroughSingularity):
        elapsed_time_via_tau(tf, tr)  # path lies in eta(X) = 2xy = 0


def test_escape_profile():
    tr = integrate_ray(SADDLE, ComplexPoint(1.0, 1.0), 1.0, 1.0, 1e-10)
    prof = escape_profile(tr, SADDLE_PARAMS)
    assert prof.min_dist_x_axis >= 1.0
    assert prof.min_dist_fiber is not None

    const = parse_vector_field("0*x + 1 d/dx + 0 d/dy")
    tr = integrate_ray(const, ComplexPoint(1.0, 0.0), 1.0, 50.0, 1e-8)
    prof = escape_profile(tr)
    assert prof.growth_exponent is not None
    assert abs(prof.growth_exponent - 1.0) < 0.1


def test_csv_rows_format():
    G = catalog_G()
    tr = integrate_ray(
        CATALOG_X, ComplexPoint(1.0, 1.0), 1.0, 0.2, 1e-9, first_integral=G
    )
    rows = trace_to_csv_rows(tr)
    assert rows[0] == ["t_re", "t_im", "x_re", "x_im", "y_re", "y_im", "G_re", "G_im"]
    assert len(rows) == len(tr.samples) + 1
    # 17 significant digits survive a float round trip
    for cell in rows[1]:
        float(cell)
    x = float(rows[-1][2])
    assert x == tr.endpoint.x.real
