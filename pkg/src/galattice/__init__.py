"""Exact computation of integral structures on cohomology of varieties over k((t)).

Subpackages: ``arith`` (scalars, polynomials, series), ``ideals`` (Gröbner
bases), ``models`` (charts, normalization, the sheaf G_a(r)), ``lattice``
(Čech lattices over R = k[t]_(t)), ``rigid`` (valuation-form rigid checks)
and ``cli``.
"""

__version__ = "0.1.0"
