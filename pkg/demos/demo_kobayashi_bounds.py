"""Kobayashi metric on balls and sandwich bounds on a polydisc.

On a ball the metric is explicit; on other bounded domains we sandwich it
between the metric of the circumscribed ball (lower bound) and that of the
inscribed ball at the evaluation point (upper bound, by the
distance-decreasing property of holomorphic inclusions).
"""

import numpy as np

from normlab import Ball, Polydisc, kobayashi_ball, kobayashi_domain_bounds, kobayashi_upper


def main():
    disc = Ball((0j,), 1.0)
    print("unit disc, v = 1, moving toward the boundary:")
    print(f"{'|z|':>6} {'K(z,v)':>12} {'upper bound':>12}")
    for x in (0.0, 0.3, 0.6, 0.9, 0.99):
        z, v = (complex(x),), (1 + 0j,)
        print(f"{x:6.2f} {kobayashi_ball(disc, z, v):12.6f} {kobayashi_upper(disc, z, v):12.6f}")

    poly = Polydisc((0j, 0j), (1.0, 2.0))
    rng = np.random.default_rng(7)
    print("\npolydisc radii (1,2): sandwich bounds at random interior points:")
    print(f"{'point':>30} {'lower':>10} {'upper':>10}")
    for _ in range(6):
        p = (
            complex(*rng.uniform(-0.6, 0.6, 2)),
            complex(*rng.uniform(-1.2, 1.2, 2)),
        )
        v = tuple(complex(*rng.normal(size=2)) for _ in range(2))
        lower, upper = kobayashi_domain_bounds(poly, p, v)
        ps = " ".join(f"{c:.2f}" for c in p)
        print(f"{ps:>30} {lower:10.5f} {upper:10.5f}")
        assert lower <= upper


if __name__ == "__main__":
    main()
