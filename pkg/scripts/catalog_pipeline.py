#!/usr/bin/env python3
"""End-to-end demo on the catalog pair P = xy, X = x(1+xy)dx + y(1-xy)dy.

Walks the whole chain: dual field, covering map, pullback shape, one-form of
times, closed-form first integral, exact verification, and finally a numeric
trace with conservation and elapsed-time checks.
"""

import cmath

from holofol import (
    ComplexPoint,
    SaitoSuzukiParams,
    build_H,
    build_P,
    build_Y,
    conservation_check,
    contract,
    elapsed_time_via_tau,
    first_integral_xy,
    integrate_ray,
    parse_vector_field,
    print_bipoly,
    print_one_form,
    print_vector_field,
    pullback_field,
    pullback_form,
    times_form,
    verify_first_integral,
)
from holofol.normal_forms import extract_pullback_shape


def main():
    params = SaitoSuzukiParams(m=1, n=1, l=0)
    X = parse_vector_field("x*(1+x*y) d/dx + y*(1-x*y) d/dy")
    P = build_P(params)
    Y = build_Y(params)
    print("P          =", print_bipoly(P))
    print("Y          =", print_vector_field(Y))
    print("dP(Y)      =", contract_str(params, Y))

    H = build_H(params)
    W = pullback_field(H, X)
    print("H*X        =", print_vector_field(W))
    shape = extract_pullback_shape(W, params.n)
    print(f"shape      : k={shape.k}, a={shape.a}, c={shape.c}, N={shape.N}")

    tf = times_form(X, params)
    print("eta        =", print_one_form(tf.eta))
    print(f"eta(X)     = {print_bipoly(tf.eta_of_X)}  "
          f"(unit {tf.unit_const}, alpha {tf.alpha}, beta {tf.beta})")
    print("tau        =", print_one_form(tf.tau))
    rho = pullback_form(H, tf.tau)
    print("rho = H*tau=", print_one_form(rho))
    print("rho(H*X)   =", contract(rho, W))
    k_expected = params.n * (tf.alpha - 1) - params.m * (shape.N - 1)
    print(f"k identity : k = {shape.k} = n(alpha-1) - m(N-1) = {k_expected}")

    G = first_integral_xy(params, shape)
    print("G^(nq)     =", G.describe())
    print("verdict    =", verify_first_integral(G, X).kind)

    z0 = ComplexPoint(1.0, 1.0)
    tr = integrate_ray(X, z0, 1.0, 1.0, 1e-10, first_integral=G)
    drift = conservation_check(tr, G)
    elapsed = elapsed_time_via_tau(tf, tr)
    print(f"trace      : {tr.status}, {tr.stats.steps} steps, drift {drift:.2e}")
    print(f"tau-time   : {elapsed:.10f}  (flow time 1.0)")


def contract_str(params, Y):
    from holofol import differential

    return contract(differential(build_P(params)), Y)


if __name__ == "__main__":
    main()
