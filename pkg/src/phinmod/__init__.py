"""phinmod - exact-arithmetic workbench for 3-dimensional filtered (phi, N)-modules.

Decides weak admissibility, classifies admissible modules of Hodge type
(0, r, s) into their normal-form families, decides isomorphism and reports
reducibility.
"""

__version__ = "1.0.0"
