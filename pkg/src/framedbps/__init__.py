"""Exact symbolic computation of framed colored HOMFLYPT invariants,
Ooguri-Vafa integer tables, and BPS invariants of framed knots and links,
cross-validated between a plethystic pipeline and A-polynomial curve solvers.
"""

__version__ = "1.0.0"
