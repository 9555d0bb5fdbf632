"""quadrex: computational quadratic-residue toolkit.

Congruence solvers, four Legendre-symbol evaluators, congruence-class
descriptions of X+-(d), GF(2) density theorems, binary quadratic forms and
class numbers, Gauss and Weil character sums, arithmetic-progression
counting, central-limit experiments, and a Shamir zero-knowledge
identification demo.
"""

__version__ = "0.1.0"
