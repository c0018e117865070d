"""Quadratic Lie and super-Lie presentations and their table-level reports.

A presentation lives inside the flavor's admissible part of V tensor V:
brackets of two degree-1 generators are alternating for the Lie flavor
and symmetric (squares allowed) for the super flavor, where parity is
degree mod 2.  Enveloping algebras are the same data read as quadratic
algebra presentations.  Free dimensions are counted by two independent
methods that must agree, and the freeness report states the band,
Koszul-module, and dual-surjectivity verdicts at the table level; no
Lie-coalgebra object is ever materialized.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import Config, DEFAULT
from .exactlin import Field, Mat, Subspace
from .homology import BigradedTable, Certificate, tor_bigraded
from .koszulity import MorphismPresentation, certify
from .quadratic import (
    COALGEBRA,
    LEFT,
    RIGHT,
    GradedAlgebraTable,
    GradedModuleTable,
    QuadPresentation,
    component,
    quadratic_part,
    trivial_module_table,
)

LIE = "lie"
SUPER_LIE = "super_lie"

COCOMMUTATIVE = "cocommutative"
SKEW_COCOMMUTATIVE = "skew_cocommutative"
NEITHER = "neither"


# ---------------------------------------------------------------------------
# presentations


def _admissible_subspace(field: Field, d: int, flavor: str) -> Subspace:
    """Alternating part for Lie brackets, symmetric part for super ones."""
    rows = []
    for i in range(d):
        for j in range(i + 1, d):
            row = field.zeros((d * d,))
            row[i * d + j] = 1
            row[j * d + i] = field.array([-1 if flavor == LIE else 1])[()]
            rows.append(row)
    if flavor == SUPER_LIE:
        for i in range(d):
            row = field.zeros((d * d,))
            row[i * d + i] = 1
            rows.append(row)
    if not rows:
        return Subspace.zero(field, d * d)
    return Subspace.from_rows(field, d * d, np.array(rows))


@dataclass(frozen=True)
class LiePresentation:
    """Quadratic relations on the bracket of degree-1 generators."""

    field: Field
    labels: tuple
    flavor: str
    relations: Subspace

    def __post_init__(self):
        if self.flavor not in (LIE, SUPER_LIE):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        d = len(self.labels)
        if self.relations.field != self.field or self.relations.ambient_dim != d * d:
            raise ValueError("relations do not live in the tensor square")
        admissible = _admissible_subspace(self.field, d, self.flavor)
        if not admissible.contains_space(self.relations):
            raise ValueError(
                f"relations leave the admissible {self.flavor} part of the tensor square")

    @property
    def dim_v(self) -> int:
        return len(self.labels)


def free_lie_presentation(field: Field, labels, flavor: str = LIE) -> LiePresentation:
    d = len(tuple(labels))
    return LiePresentation(field, tuple(labels), flavor, Subspace.zero(field, d * d))


def abelian_lie_presentation(field: Field, labels, flavor: str = LIE) -> LiePresentation:
    """All brackets of generators set to zero."""
    labels = tuple(labels)
    return LiePresentation(field, labels, flavor,
                           _admissible_subspace(field, len(labels), flavor))


def enveloping_presentation(l: LiePresentation) -> QuadPresentation:
    """The bracket relations read as quadratic algebra relations."""
    return QuadPresentation(l.field, l.labels, l.relations)


# ---------------------------------------------------------------------------
# free dimensions, two ways


def _mobius(n: int) -> int:
    out, m = 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


def necklace_dims(d: int, flavor: str, n_max: int) -> tuple:
    """Dimension counts from the necklace identity for 1/(1 - d t).

    Lie flavor: the classical divisor sum with Mobius weights.  Super
    flavor: odd-degree components contribute exterior factors, so the
    same identity carries a sign on odd blocks and is inverted degree
    by degree.
    """
    if flavor == LIE:
        return tuple(sum(_mobius(m) * d ** (n // m) for m in range(1, n + 1)
                         if n % m == 0) // n
                     for n in range(1, n_max + 1))
    if flavor != SUPER_LIE:
        raise ValueError(f"unknown flavor {flavor!r}")
    dims = []
    for n in range(1, n_max + 1):
        acc = 0
        for m in range(1, n):
            if n % m == 0:
                k = n // m
                sign = 1 if m % 2 == 0 else (-1) ** (k + 1)
                acc += m * dims[m - 1] * sign
        dims.append((d ** n - acc) // n)
    return tuple(dims)


def _lyndon_count(d: int, n: int) -> int:
    if n == 1:
        return d
    count = 0
    for code in range(d ** n):
        w = []
        c = code
        for _ in range(n):
            w.append(c % d)
            c //= d
        w.reverse()
        if all(w < w[k:] + w[:k] for k in range(1, n)):
            count += 1
    return count


def hall_basis_dims(d: int, flavor: str, n_max: int) -> tuple:
    """Explicit basis enumeration: Lyndon words, plus squares of the
    odd-length ones for the super flavor."""
    if flavor not in (LIE, SUPER_LIE):
        raise ValueError(f"unknown flavor {flavor!r}")
    dims = []
    for n in range(1, n_max + 1):
        count = _lyndon_count(d, n)
        if flavor == SUPER_LIE and n % 2 == 0 and (n // 2) % 2 == 1:
            count += _lyndon_count(d, n // 2)
        dims.append(count)
    return tuple(dims)


def free_lie_dims(d: int, flavor: str, n_max: int) -> tuple:
    """Dimensions of the free (super-)Lie algebra on d degree-1 generators."""
    by_necklace = necklace_dims(d, flavor, n_max)
    by_hall = hall_basis_dims(d, flavor, n_max)
    if by_necklace != by_hall:
        raise RuntimeError(
            f"free Lie dimension methods disagree: {by_necklace} vs {by_hall}")
    return by_necklace


# ---------------------------------------------------------------------------
# cocommutativity of realized dual coalgebras


def _flip_positions(d: int, i: int, j: int) -> np.ndarray:
    """Index permutation moving the first i tensor factors behind the last j."""
    old = np.arange(d ** (i + j))
    return (old % d ** j) * d ** i + (old // d ** j)


@dataclass(frozen=True)
class CocommutativityReport:
    """Flip invariance of the realized components, with and without sign.

    The plain condition fixes every component vector under every block
    swap; the skew condition allows the sign of the degree product.  In
    characteristic 2 the two coincide.  ``witness`` is the first degree
    at which both conditions have failed (None otherwise).
    """

    window: int
    cocommutative: bool
    skew_cocommutative: bool
    witness: Optional[int]

    @property
    def verdict(self) -> str:
        if self.cocommutative:
            return COCOMMUTATIVE
        if self.skew_cocommutative:
            return SKEW_COCOMMUTATIVE
        return NEITHER


def cocommutativity_check(p: QuadPresentation, window: int = 3,
                          config: Config = DEFAULT) -> CocommutativityReport:
    """Classify the dual coalgebra of a quadratic presentation by flips."""
    if window < 2:
        raise ValueError("the flip conditions start in degree 2: window must be at least 2")
    d = p.dim_v
    plain_fail = skew_fail = None
    for n in range(2, window + 1):
        basis = component(p, COALGEBRA, n, config=config).realization
        if basis.rows == 0:
            continue
        for i in range(1, n):
            pos = _flip_positions(d, i, n - i)
            flipped = np.empty_like(basis.a)
            flipped[:, pos] = basis.a
            flipped = Mat(p.field, flipped)
            if plain_fail is None and flipped != basis:
                plain_fail = n
            signed = basis if (i * (n - i)) % 2 == 0 else -basis
            if skew_fail is None and flipped != signed:
                skew_fail = n
        if plain_fail is not None and skew_fail is not None:
            break
    witness = None
    if plain_fail is not None and skew_fail is not None:
        witness = max(plain_fail, skew_fail)
    return CocommutativityReport(window, plain_fail is None, skew_fail is None, witness)


# ---------------------------------------------------------------------------
# freeness report


def _graded_commutative_failure(t: GradedAlgebraTable) -> Optional[tuple]:
    """First (i, j) where the table breaks sign-commutativity, or None."""
    top = t.max_degree
    for i in range(1, top + 1):
        for j in range(i, top + 1 - i):
            di, dj = t.dims[i], t.dims[j]
            if di == 0 or dj == 0:
                continue
            pos = (np.arange(di * dj) % dj) * di + np.arange(di * dj) // dj
            swapped = Mat(t.field, t.mult[(j, i)].a[:, pos])
            expected = t.mult[(i, j)] if (i * j) % 2 == 0 else -t.mult[(i, j)]
            if swapped != expected:
                return (i, j)
    return None


@dataclass(frozen=True)
class FreenessReport:
    """Band, Koszul-module, and dual-surjectivity verdicts for an algebra map.

    The target is a module over the source through the map; ``tor`` is
    its bigraded homology, ``band_holds`` whether everything off the
    lines j - i in {0, 1} vanishes (the freeness criterion for the
    kernel on the Lie side), ``koszul_module`` whether the homology is
    diagonal, and ``dual_surjective`` the degreewise surjectivity of
    the induced map on realized dual-coalgebra components.
    """

    window: int
    band_holds: bool
    band_failure: Optional[tuple]
    koszul_module: bool
    dual_surjective: dict
    tor: BigradedTable
    source_certificate: Certificate
    target_certificate: Certificate


def freeness_report(f: MorphismPresentation, window: int = 4,
                    config: Config = DEFAULT) -> FreenessReport:
    """Table-level freeness verdicts for a map of sign-commutative algebras."""
    for name, table in (("source", f.source), ("target", f.target)):
        bad = _graded_commutative_failure(table)
        if bad is not None:
            raise ValueError(f"the {name} table is not sign-commutative at degrees {bad}")
    cert_a = certify(f.source, window=window, config=config)
    cert_b = certify(f.target, window=window, config=config)
    for name, cert in (("source", cert_a), ("target", cert_b)):
        if not cert.holds:
            raise ValueError(f"the {name} table must be certified Koszul")

    atab, btab = f.source, f.target
    eye = lambda k: Mat.eye(atab.field, k)
    action = {}
    for i in range(window + 1):
        for j in range(window + 1 - i):
            action[(i, j)] = btab.mult[(j, i)] @ eye(btab.dims[j]).kron(f.maps[i])
    bmod = GradedModuleTable(atab, btab.dims, action, RIGHT)
    tor = tor_bigraded(bmod, atab, trivial_module_table(atab, LEFT),
                       (window, window), config=config)

    band_failure = None
    for (i, j), dim in sorted(tor.entries.items()):
        if dim and j - i not in (0, 1):
            band_failure = (i, j)
            break

    qa = quadratic_part(atab).presentation
    qb = quadratic_part(btab).presentation
    f1 = f.maps[1]
    surjective = {0: True, 1: f1.rank() == btab.dims[1]}
    big = f1
    for n in range(2, window + 1):
        big = big.kron(f1)
        ca = component(qa, COALGEBRA, n, config=config).realization
        cb_dim = component(qb, COALGEBRA, n, config=config).dim
        image = Mat(atab.field, (big @ ca.T).a.T)
        surjective[n] = image.rank() == cb_dim

    return FreenessReport(window, band_failure is None, band_failure,
                          tor.diagonal_only(), surjective, tor, cert_a, cert_b)
