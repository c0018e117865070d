"""Exact-arithmetic toolkit for quadratic (co)algebra homology.

Subpackages:

- ``exactlin``: matrices and canonical subspaces over F_p and Q.
- ``quadratic``: quadratic presentations, their components, duality.
- ``homology``: bar/cobar complexes and Koszul complexes.
- ``koszulity``: multi-method Koszulity certificates and morphism reports.
- ``groups``: finite multiplication tables and maximal prime-power quotients.
- ``conilpotent``: coaugmentation filtrations, group coalgebras, pipelines.
- ``lie``: graded Lie/super-Lie presentations and freeness reports.
- ``galois``: mod-l Milnor K-theory towers and the main pipeline.
- ``cli``: line-format parser and the deterministic report commands.
"""

__version__ = "0.1.0"
