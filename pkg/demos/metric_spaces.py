"""Discrepancy of subsets of small distance-regular graphs.

Every subset is evaluated four ways: the kernel form, the ball-intersection
form, the association-scheme form and the definition itself.
"""

from codedisc.metric_space import (
    WeightVector,
    class_distribution,
    cycle_space,
    discrepancy_definition,
    discrepancy_lambda_form,
    discrepancy_mu_form,
    johnson_space,
    scheme_discrepancy,
    scheme_from_space,
    weighted_discrepancy,
)

cases = [
    ("C_6, antipodal pair", cycle_space(6), [0, 3]),
    ("C_6, adjacent pair", cycle_space(6), [0, 1]),
    ("C_7, three points", cycle_space(7), [0, 2, 4]),
    ("J(5,2), two vertices", johnson_space(5, 2), [0, 7]),
]

for label, S, Z in cases:
    scheme = scheme_from_space(S)
    forms = (
        discrepancy_lambda_form(S, Z),
        discrepancy_mu_form(S, Z),
        scheme_discrepancy(scheme, class_distribution(S, Z), len(Z)),
        discrepancy_definition(S, Z),
    )
    agree = "agree" if len(set(forms)) == 1 else "DISAGREE"
    print(f"{label:28s} D = {forms[0]}  ({agree})")

# only the radius-1 balls counted
S = cycle_space(6)
print("C_6 antipodal, radius 1 only:", weighted_discrepancy(S, [0, 3], WeightVector.indicator(S.n, 1)))
