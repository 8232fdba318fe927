"""Monte-Carlo discrepancy of random codes versus the exact expectation."""

from codedisc.montecarlo import monte_carlo

for n, N in [(8, 16), (10, 32)]:
    rep = monte_carlo(n, N, trials=2000, seed=1)
    print(f"n={n} N={N}: mean {float(rep.mean):.4f}, expected {float(rep.expected):.4f}, z = {rep.z_score:+.2f}")
    print(
        f"    sample variance {float(rep.variance):.3f}, exact {float(rep.exact_variance):.3f}, "
        f"bound {float(rep.variance_bound):.3f}"
    )
