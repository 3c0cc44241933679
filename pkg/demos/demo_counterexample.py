"""The linear counterexample: a constant limit with a divergent scale ratio.

For f(z) = z on the unit disc, centers z_n = 1 - n^-3 and scales rho_n = n^-2
give rescaled functions converging (locally uniformly) to the constant 1,
yet rho_n divided by the boundary distance 1 - |z_n| equals n and diverges.
A constant limit therefore does not force the scale/distance ratio to vanish,
so the unrestricted converse of the constant-limit theorem fails.
"""

from normlab import remark_counterexample


def main():
    report = remark_counterexample(n_max=50, radius=1.0)
    print(f"{'n':>3} {'rho_n/(1-|z_n|)':>16} {'sup|g_n - 1|':>14} {'bound n^-3+n^-2':>16}")
    for n, ratio, dev, bound in zip(
        report.indices, report.ratios, report.sup_dev, report.bounds
    ):
        if n % 5 == 0 or n <= 3:
            print(f"{n:>3} {ratio:16.1f} {dev:14.6f} {bound:16.6f}")
    print(f"\nconvergence verdict: {report.convergence.verdict}")
    print(f"overall verdict:     {report.verdict}")


if __name__ == "__main__":
    main()
