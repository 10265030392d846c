import cmath
import math
import random
from fractions import Fraction

import pytest

from holofol import (
    SaitoSuzukiParams,
    UniPoly,
    build_H,
    build_Y,
    corollary1_normal_integral,
    first_integral_uv,
    first_integral_xy,
    gamma_from_pf,
    parse_vector_field,
    pf_at_zero,
    pullback_field,
    pushforward_field,
    verify_first_integral,
)
from holofol.errors import GateFailure, InvalidParams, IrrationalLambda1
from holofol.normal_forms import PulledBackRiccati, extract_pullback_shape
from holofol.scalars import GaussianRational as GR

from conftest import SEED, pipeline_instance

CATALOG_X = parse_vector_field("x*(1+x*y) d/dx + y*(1-x*y) d/dy")
SADDLE_PARAMS = SaitoSuzukiParams(m=1, n=1, l=0)


def catalog_pb():
    return PulledBackRiccati(
        k=0, a=UniPoly("v", {0: GR(1), 1: GR(1)}), c=GR(2), N=1, n=1
    )


def test_gamma_catalog():
    pf = pf_at_zero(UniPoly("z", {0: GR(3), 1: GR(2), 2: GR(1)}), GR(1), 2)
    g = gamma_from_pf(pf)
    assert g.sbar == UniPoly("z", {1: GR(1)})
    assert g.lambda1 == Fraction(2)
    assert g.lambdas == (GR(-3),)

    pf = pf_at_zero(UniPoly("z", {0: GR(1), 1: GR(1)}), GR(2), 1)
    g = gamma_from_pf(pf)
    assert g.sbar == UniPoly("z", {1: GR(Fraction(1, 2))})
    assert g.lambda1 == Fraction(1, 2)

    pf = pf_at_zero(UniPoly.constant("z", 1), GR(1), 1)
    g = gamma_from_pf(pf)
    assert g.sbar.is_zero() and g.lambda1 == Fraction(1)
    assert abs(g.eval_complex(2.0) - 2.0) < 1e-15  # Gamma(z) = z


def test_gamma_rejects_non_real_residue():
    pf = pf_at_zero(UniPoly.constant("z", GR(1, 1)), GR(1), 1)  # A_1 = 1 + i
    with pytest.raises(IrrationalLambda1):
        gamma_from_pf(pf)


def test_first_integral_uv_catalog():
    gamma, F = first_integral_uv(catalog_pb())
    assert not F.non_proper_regime
    # Gamma = e^{v/2} v^{1/2}
    v = 1.3
    assert abs(gamma.eval_complex(v) - math.exp(v / 2) * v**0.5) < 1e-14
    assert abs(F.eval_complex(2.0, v) - 2.0 / gamma.eval_complex(v)) < 1e-14

    trivial = PulledBackRiccati(k=0, a=UniPoly.constant("v", 1), c=GR(1), N=1, n=1)
    gamma, F = first_integral_uv(trivial)
    assert abs(F.eval_complex(3.0, 1.5) - 2.0) < 1e-14  # F = u/v

    n2 = PulledBackRiccati(
        k=0, a=UniPoly("v", {0: GR(3), 1: GR(2), 2: GR(1)}), c=GR(1), N=2, n=1
    )
    assert first_integral_uv(n2)[1].non_proper_regime


def test_first_integral_xy_catalog():
    G = first_integral_xy(SADDLE_PARAMS, catalog_pb())
    assert (G.q_hat, G.p_hat, G.n) == (2, 1, 1)
    assert G.sigma == UniPoly("z", {1: GR(Fraction(1, 2))})
    # G^2 = x^2 e^{-xy} / (xy) = x / (y e^{xy})
    x, y = 1.1, 0.4
    expected = x / (y * math.exp(x * y))
    assert abs(G.eval_complex(x, y) - expected) < 1e-14
    assert verify_first_integral(G, CATALOG_X).is_exact_zero


def test_first_integral_xy_gates():
    n2 = PulledBackRiccati(
        k=0, a=UniPoly("v", {0: GR(3), 2: GR(1)}), c=GR(1), N=2, n=1
    )
    with pytest.raises(GateFailure) as exc:
        first_integral_xy(SADDLE_PARAMS, n2)
    assert exc.value.reason == "N_greater_than_1"

    # a = 1 + v with n = 2: sbar = v/2 is not in C[z^2]
    params = SaitoSuzukiParams(m=1, n=2, l=0)
    bad = PulledBackRiccati(
        k=0, a=UniPoly("v", {0: GR(1), 1: GR(1)}), c=GR(2), N=1, n=2
    )
    with pytest.raises(GateFailure) as exc:
        first_integral_xy(params, bad)
    assert exc.value.reason == "sbar_not_in_C_zn"

    imag = PulledBackRiccati(
        k=0, a=UniPoly.constant("v", GR(1, 1)), c=GR(1), N=1, n=1
    )
    with pytest.raises(IrrationalLambda1):
        first_integral_xy(SADDLE_PARAMS, imag)


def test_nonzero_verdict_with_residual():
    # pb(a=1, c=2, N=1) gives lambda1 = 1/2 and G^2 = x/y, conserved along the
    # pushforward of u du + 2v dv but not along the saddle x dx - y dy
    pb = PulledBackRiccati(k=0, a=UniPoly.constant("v", 1), c=GR(2), N=1, n=1)
    G = first_integral_xy(SADDLE_PARAMS, pb)
    X = pushforward_field(build_H(SADDLE_PARAMS), pb.field())
    assert verify_first_integral(G, X).is_exact_zero
    saddle = parse_vector_field("x d/dx + -y d/dy")
    verdict = verify_first_integral(G, saddle)
    assert verdict.kind == "nonzero"
    assert verdict.residual.is_constant()
    # d log(x^2/(xy)) contracted with the saddle: 1 - (-1) = 2
    assert verdict.residual.constant_value() == GR(2)


def test_degenerate_exponents_rejected():
    from holofol.first_integral import FirstIntegralForm
    from holofol import parse_polynomial
    from holofol.foliation import XY

    with pytest.raises(InvalidParams):
        FirstIntegralForm(
            q_hat=0,
            p_hat=-1,
            n=1,
            sbar=UniPoly.zero("z"),
            sigma=UniPoly.zero("z"),
            P=parse_polynomial("x*y", vars=XY),
        )


def test_corollary1_descriptors():
    for params in (
        SaitoSuzukiParams(1, 1, 0),
        SaitoSuzukiParams(-1, 2, 0),
        SaitoSuzukiParams(1, 1, 1, UniPoly.constant("x", 1)),
    ):
        desc = corollary1_normal_integral(params)
        assert desc.verify_against(build_Y(params))


def test_pipeline_randomized():
    rng = random.Random(SEED + 8)
    for _ in range(15):
        params, pb, X = pipeline_instance(rng)
        shape = extract_pullback_shape(
            pullback_field(build_H(params), X), params.n
        )
        G = first_integral_xy(params, shape)
        assert verify_first_integral(G, X).is_exact_zero
