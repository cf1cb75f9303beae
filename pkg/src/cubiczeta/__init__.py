"""cubiczeta: exact arithmetic for binary cubic form orbits, quadratic-order
class groups, and the Dirichlet series identities connecting the two.

Everything is integer/Fraction exact; identities between Dirichlet series are
checked coefficient by coefficient up to a bound, never numerically.
"""

__version__ = "0.1.0"
