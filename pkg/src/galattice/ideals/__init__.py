"""Groebner-basis engine: membership, elimination, saturation, intersection, radicals."""

from .ideal import (Ideal, RadicalRefusal, divides, exact_div, is_squarefree, poly_gcd,
                    poly_lcm, squarefree_part)
from .order import GREVLEX, LEX, MonomialOrder
