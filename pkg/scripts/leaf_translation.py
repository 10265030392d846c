#!/usr/bin/env python3
"""Exploratory diagnostic: do x-translations map leaves to leaves?

For a Riccati-shaped field the closed-form parametrization suggests that the
trajectory through (x0 + alpha, y0) of the translated field matches the
x-translate of the trajectory through (x0, y0).  The identity involves branch
choices the tracer does not model, so this is a numerical experiment and not
part of the acceptance suite: we trace both and report the pointwise gap.
"""

import argparse

from holofol import (
    ComplexPoint,
    integrate_ray,
    parse_vector_field,
    print_vector_field,
    translate,
)
from holofol.scalars import GaussianRational as GR


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-X", dest="field", default="x^2 d/dx + y d/dy")
    ap.add_argument("--alpha", type=int, default=1)
    ap.add_argument("--x0", type=float, default=1.0)
    ap.add_argument("--y0", type=float, default=1.0)
    ap.add_argument("-T", type=float, default=0.5)
    ap.add_argument("--tol", type=float, default=1e-12)
    args = ap.parse_args()

    X = parse_vector_field(args.field)
    alpha = GR(args.alpha)
    Xt = translate(alpha, X)
    print("field             :", print_vector_field(X))
    print("translated field  :", print_vector_field(Xt))

    a = integrate_ray(X, ComplexPoint(args.x0, args.y0), 1.0, args.T, args.tol)
    b = integrate_ray(
        Xt, ComplexPoint(args.x0 + args.alpha, args.y0), 1.0, args.T, args.tol
    )
    if a.status != "completed" or b.status != "completed":
        print(f"traces incomplete: {a.status} / {b.status}")
        return

    # compare endpoints: the translated-field trajectory shifted back by alpha
    dx = abs((b.endpoint.x - args.alpha) - a.endpoint.x)
    dy = abs(b.endpoint.y - a.endpoint.y)
    print(f"endpoint gap      : |dx| = {dx:.3e}, |dy| = {dy:.3e}")
    agree = "agree" if max(dx, dy) < 1e-8 else "DISAGREE"
    print(f"verdict (heuristic): leaves {agree} under x-translation by {args.alpha}")


if __name__ == "__main__":
    main()
