"""Perfect codes against the linear-programming lower bound.

For each code the exact discrepancy is compared with the LP bound for its
(n, N); perfect codes meet it, the simplex code does not.
"""

from codedisc.codes import golay23, hamming_code, parse_generator, qr17, repetition, simplex_code
from codedisc.lp_bounds import certify_minimizer, primal_discrepancy_lp

codes = [
    repetition(5),
    hamming_code(3),
    hamming_code(4),
    qr17(),
    golay23(),
    simplex_code(3),
    parse_generator("1110000\n0011100\n0000111\n", name="spread [7,3]"),
]

for code in codes:
    print(certify_minimizer(code))

# at (7, 8) the spread code realizes one optimal distribution
print("LP optimum at (7, 8):", tuple(int(a) for a in primal_discrepancy_lp(7, 8).solution))
