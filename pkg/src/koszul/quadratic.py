"""Quadratic presentations, their graded components, and quadratic parts.

A presentation is a pair (V, R) with R a subspace of V tensor V.  Read as an
algebra it is T(V)/(R); read as a coalgebra it is the largest subcoalgebra of
the tensor coalgebra whose degree-2 part is R.  The same data serves both
readings; duality just flips the reading tag.

Tensor coordinates are row-major and 0-based with the left factor slowest:
e_i tensor e_j has index i*dim(V) + j.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .config import Config, check_ambient
from .exactlin import (
    Field,
    FieldMismatchError,
    Mat,
    Subspace,
    kernel,
    solve_in_span,
)

ALGEBRA = "algebra"
COALGEBRA = "coalgebra"

__all__ = [
    "ALGEBRA",
    "COALGEBRA",
    "QuadPresentation",
    "QuadModulePresentation",
    "ComponentResult",
    "GradedAlgebraTable",
    "GradedModuleTable",
    "QuadraticPart",
    "component",
    "dual_presentation",
    "quadratic_part",
    "table_from_presentation",
    "shift_collection",
    "module_shift_collection",
    "free_presentation",
    "polynomial_presentation",
    "trivial_module_table",
    "opposite_table",
    "opposite_module_table",
    "shift_module_down",
    "submodule_table",
    "quotient_module_table",
    "module_component_over_table",
]


@dataclass(frozen=True)
class QuadPresentation:
    """(V, R) with a reading tag; R lives in V tensor V."""

    field: Field
    v_labels: tuple[str, ...]
    r: Subspace
    reading: str = ALGEBRA

    def __post_init__(self):
        d = len(self.v_labels)
        if len(set(self.v_labels)) != d:
            raise ValueError("generator labels must be distinct")
        if self.r.ambient_dim != d * d:
            raise ValueError(f"relations live in ambient {d * d}, got {self.r.ambient_dim}")
        if self.r.field != self.field:
            raise FieldMismatchError("relation subspace field mismatch")
        if self.reading not in (ALGEBRA, COALGEBRA):
            raise ValueError(f"unknown reading {self.reading!r}")

    @property
    def dim_v(self) -> int:
        return len(self.v_labels)

    def describe(self) -> str:
        return f"{{{','.join(self.v_labels)}; dim R={self.r.dim}}} over {self.field}"


@dataclass(frozen=True)
class QuadModulePresentation:
    """(U, S) over a presentation with dim V = v_dim; S lives in V tensor U."""

    field: Field
    v_dim: int
    u_labels: tuple[str, ...]
    s: Subspace
    reading: str = ALGEBRA

    def __post_init__(self):
        u = len(self.u_labels)
        if len(set(self.u_labels)) != u:
            raise ValueError("module generator labels must be distinct")
        if self.s.ambient_dim != self.v_dim * u:
            raise ValueError(
                f"module relations live in ambient {self.v_dim * u}, got {self.s.ambient_dim}"
            )
        if self.s.field != self.field:
            raise FieldMismatchError("module relation subspace field mismatch")
        if self.reading not in (ALGEBRA, COALGEBRA):
            raise ValueError(f"unknown reading {self.reading!r}")

    @property
    def dim_u(self) -> int:
        return len(self.u_labels)


def dual_presentation(p: QuadPresentation, mod: Optional[QuadModulePresentation] = None):
    """Quadratic duality: identity on (V, R)/(U, S), reading tag flipped."""
    flip = COALGEBRA if p.reading == ALGEBRA else ALGEBRA
    dp = QuadPresentation(p.field, p.v_labels, p.r, flip)
    if mod is None:
        return dp
    mflip = COALGEBRA if mod.reading == ALGEBRA else ALGEBRA
    return dp, QuadModulePresentation(mod.field, mod.v_dim, mod.u_labels, mod.s, mflip)


# ---------------------------------------------------------------------------
# shifted relation subspaces


def _eye_mat(field: Field, n: int) -> Mat:
    return Mat.eye(field, n)


def shifted_subspace(field: Field, basis: Subspace, d: int, left: int, right: int,
                     tail: int = 1) -> Subspace:
    """V^{tensor left} tensor B tensor V^{tensor right} (tensor U of dim tail)."""
    rows = Mat(field, basis.basis)
    m = _eye_mat(field, d**left).kron(rows).kron(_eye_mat(field, d**right))
    if tail != 1:
        m = m.kron(_eye_mat(field, tail))
    return Subspace.from_rows(field, m.cols, m.a)


def shift_collection(p: QuadPresentation, n: int) -> list[Subspace]:
    """The n-2+1 shifts V^{k-1} R V^{n-k-1} inside V^{tensor n}."""
    d = p.dim_v
    return [shifted_subspace(p.field, p.r, d, k - 1, n - k - 1) for k in range(1, n)]


def module_shift_collection(p: QuadPresentation, mod: QuadModulePresentation, n: int) -> list[Subspace]:
    """Algebra shifts tensored with U, plus V^{n-1} tensor S, inside V^n tensor U."""
    d, u = p.dim_v, mod.dim_u
    out = [shifted_subspace(p.field, p.r, d, k - 1, n - k - 1, tail=u) for k in range(1, n)]
    out.append(shifted_subspace(p.field, mod.s, d, n - 1, 0))
    return out


# ---------------------------------------------------------------------------
# components


@dataclass(frozen=True)
class ComponentResult:
    side: str
    degree: int
    dim: int
    realization: Mat
    # algebra side: projection from the tensor power onto the component;
    # coalgebra side: basis rows of the component inside the tensor power


def component(
    p: QuadPresentation,
    side: str,
    n: int,
    mod: Optional[QuadModulePresentation] = None,
    config: Optional[Config] = None,
) -> ComponentResult:
    """Degree-n component of the (co)algebra or of its (co)module."""
    if side not in (ALGEBRA, COALGEBRA):
        raise ValueError(f"unknown side {side!r}")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    field = p.field
    d = p.dim_v
    if mod is not None:
        if mod.field != field:
            raise FieldMismatchError("presentation/module field mismatch")
        if mod.v_dim != d:
            raise ValueError("module does not sit over this presentation")
        u = mod.dim_u
        ambient = d**n * u
        check_ambient(ambient, f"module component at degree {n}", config)
        if side == ALGEBRA:
            if n == 0:
                return ComponentResult(side, 0, u, Mat.eye(field, u))
            rel = Subspace.zero(field, ambient)
            for sub in module_shift_collection(p, mod, n):
                rel = rel.sum(sub)
            return ComponentResult(side, n, ambient - rel.dim, rel.quotient_map())
        if n == 0:
            return ComponentResult(side, 0, u, Mat.eye(field, u))
        cpart = component(p, COALGEBRA, n, config=config)
        cprev = component(p, COALGEBRA, n - 1, config=config)
        cn_u = Subspace.from_rows(
            field, ambient, Mat(field, cpart.realization.a).kron(Mat.eye(field, u)).a
        )
        cs = Subspace.from_rows(
            field, ambient, Mat(field, cprev.realization.a).kron(Mat(field, mod.s.basis)).a
        )
        meet = cn_u.intersect(cs)
        return ComponentResult(side, n, meet.dim, Mat(field, meet.basis))

    ambient = d**n
    check_ambient(ambient, f"component at degree {n}", config)
    if n == 0:
        return ComponentResult(side, 0, 1, Mat.eye(field, 1))
    if n == 1:
        return ComponentResult(side, 1, d, Mat.eye(field, d))
    if side == ALGEBRA:
        rel = Subspace.zero(field, ambient)
        for sub in shift_collection(p, n):
            rel = rel.sum(sub)
        return ComponentResult(side, n, ambient - rel.dim, rel.quotient_map())
    meet = Subspace.full(field, ambient)
    for sub in shift_collection(p, n):
        meet = meet.intersect(sub)
    return ComponentResult(side, n, meet.dim, Mat(field, meet.basis))


# ---------------------------------------------------------------------------
# graded tables


@dataclass(frozen=True)
class GradedAlgebraTable:
    """Multiplication tables of a graded algebra, degrees 0..max_degree.

    dims[0] == 1 and the degree-0 slot acts as the unit.  Associativity is
    asserted on every in-range triple at construction time.
    """

    field: Field
    dims: tuple[int, ...]
    mult: dict  # (i, j) -> Mat of shape (dims[i+j], dims[i]*dims[j])

    def __post_init__(self):
        if not self.dims or self.dims[0] != 1:
            raise ValueError("graded algebra tables start with a 1-dimensional unit slot")
        n = self.max_degree
        for i in range(n + 1):
            for j in range(n + 1 - i):
                m = self.mult.get((i, j))
                if m is None:
                    raise ValueError(f"missing multiplication block {(i, j)}")
                if (m.rows, m.cols) != (self.dims[i + j], self.dims[i] * self.dims[j]):
                    raise ValueError(f"multiplication block {(i, j)} has wrong shape")
        for j in range(n + 1):
            if self.mult[(0, j)] != Mat.eye(self.field, self.dims[j]):
                raise ValueError("left unit is not the identity")
            if self.mult[(j, 0)] != Mat.eye(self.field, self.dims[j]):
                raise ValueError("right unit is not the identity")
        for i in range(n + 1):
            for j in range(n + 1 - i):
                for k in range(n + 1 - i - j):
                    left = self.mult[(i + j, k)] @ self.mult[(i, j)].kron(
                        Mat.eye(self.field, self.dims[k])
                    )
                    right = self.mult[(i, j + k)] @ Mat.eye(self.field, self.dims[i]).kron(
                        self.mult[(j, k)]
                    )
                    if left != right:
                        raise ValueError(f"associativity fails on degrees {(i, j, k)}")

    @property
    def max_degree(self) -> int:
        return len(self.dims) - 1


LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class GradedModuleTable:
    """Action tables of a graded module over a GradedAlgebraTable.

    Left modules store A_i tensor M_j -> M_{i+j}; right modules store
    M_j tensor A_i -> M_{i+j}.  Keys are (i, j) in both cases.
    """

    algebra: GradedAlgebraTable
    dims: tuple[int, ...]
    action: dict  # (i, j) -> Mat
    side: str = LEFT

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ValueError(f"unknown side {self.side!r}")
        a = self.algebra
        n = self.max_degree
        if len(self.dims) != len(a.dims):
            raise ValueError("module table must cover the same degree range as its algebra")
        for i in range(n + 1):
            for j in range(n + 1 - i):
                m = self.action.get((i, j))
                if m is None:
                    raise ValueError(f"missing action block {(i, j)}")
                if (m.rows, m.cols) != (self.dims[i + j], a.dims[i] * self.dims[j]):
                    raise ValueError(f"action block {(i, j)} has wrong shape")
        for j in range(n + 1):
            if self.action[(0, j)] != Mat.eye(a.field, self.dims[j]):
                raise ValueError("unit action is not the identity")
        eye = lambda k: Mat.eye(a.field, k)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                for k in range(n + 1 - i - j):
                    if self.side == LEFT:
                        # a.(b.m) == (ab).m on A_i, A_j, M_k
                        one = self.action[(i, j + k)] @ eye(a.dims[i]).kron(self.action[(j, k)])
                        two = self.action[(i + j, k)] @ a.mult[(i, j)].kron(eye(self.dims[k]))
                    else:
                        # (m.a).b == m.(ab) on M_k, A_i, A_j
                        one = self.action[(j, i + k)] @ self.action[(i, k)].kron(eye(a.dims[j]))
                        two = self.action[(i + j, k)] @ eye(self.dims[k]).kron(a.mult[(i, j)])
                    if one != two:
                        raise ValueError(f"action compatibility fails on degrees {(i, j, k)}")

    @property
    def max_degree(self) -> int:
        return len(self.dims) - 1


def _flip_cols(m: Mat, d_left: int, d_right: int) -> Mat:
    """Precompose a map on X tensor Y with the flip from Y tensor X."""
    a = m.a.reshape(m.rows, d_left, d_right)
    a = np.ascontiguousarray(a.transpose(0, 2, 1)).reshape(m.rows, d_left * d_right)
    return Mat(m.field, a)


def trivial_module_table(a: GradedAlgebraTable, side: str = LEFT) -> GradedModuleTable:
    """The trivial module k concentrated in degree 0."""
    n = a.max_degree
    dims = (1,) + (0,) * n
    action = {}
    for i in range(n + 1):
        for j in range(n + 1 - i):
            rows = dims[i + j] if i + j <= n else 0
            action[(i, j)] = Mat.zeros(a.field, rows, a.dims[i] * dims[j])
    action[(0, 0)] = Mat.eye(a.field, 1)
    return GradedModuleTable(a, dims, action, side)


# ---------------------------------------------------------------------------
# table construction from presentations


def table_from_presentation(
    p: QuadPresentation,
    max_degree: int,
    mod: Optional[QuadModulePresentation] = None,
    config: Optional[Config] = None,
):
    """Realize {V,R} (and {U,S}) as graded tables up to max_degree."""
    field = p.field
    d = p.dim_v
    projs, sections = [], []
    for n in range(max_degree + 1):
        comp = component(p, ALGEBRA, n, config=config)
        projs.append(comp.realization)
        if n <= 1:
            sections.append(Mat.eye(field, comp.dim))
        else:
            rel = Subspace.zero(field, d**n)
            for sub in shift_collection(p, n):
                rel = rel.sum(sub)
            sections.append(rel.section_of_quotient())
    dims = tuple(m.rows for m in projs)
    mult = {}
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            mult[(i, j)] = projs[i + j] @ sections[i].kron(sections[j])
    table = GradedAlgebraTable(field, dims, mult)
    if mod is None:
        return table

    u = mod.dim_u
    mprojs, msections = [], []
    for n in range(max_degree + 1):
        comp = component(p, ALGEBRA, n, mod=mod, config=config)
        mprojs.append(comp.realization)
        if n == 0:
            msections.append(Mat.eye(field, u))
        else:
            rel = Subspace.zero(field, d**n * u)
            for sub in module_shift_collection(p, mod, n):
                rel = rel.sum(sub)
            msections.append(rel.section_of_quotient())
    mdims = tuple(m.rows for m in mprojs)
    action = {}
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            action[(i, j)] = mprojs[i + j] @ sections[i].kron(msections[j])
    mtable = GradedModuleTable(table, mdims, action, LEFT)
    return table, mtable


# ---------------------------------------------------------------------------
# quadratic parts of tables


@dataclass(frozen=True)
class QuadraticPart:
    presentation: QuadPresentation
    comparison: dict  # degree -> "iso" | "mono" | "fails"
    module_presentation: Optional[QuadModulePresentation] = None
    module_comparison: Optional[dict] = None


def _iterated_mult(a: GradedAlgebraTable, n: int) -> Mat:
    """Left-normed product map A_1^{tensor n} -> A_n in table coordinates."""
    d1 = a.dims[1]
    phi = Mat.eye(a.field, 1) if n == 0 else Mat.eye(a.field, d1)
    for k in range(2, n + 1):
        phi = a.mult[(k - 1, 1)] @ phi.kron(Mat.eye(a.field, d1))
    return phi if n >= 1 else Mat.eye(a.field, 1)


def _compare(rank: int, src_dim: int, tgt_dim: int) -> str:
    if rank == src_dim == tgt_dim:
        return "iso"
    if rank == src_dim:
        return "mono"
    return "fails"


def module_component_over_table(
    a: GradedAlgebraTable, u_dim: int, s: Subspace, n: int
) -> tuple[int, Subspace]:
    """Degree-n component of (A tensor U)/(A.S) in A_n tensor U coordinates.

    Returns (dim, relation subspace inside A_n tensor U).
    """
    field = a.field
    ambient = a.dims[n] * u_dim
    if n == 0:
        return u_dim, Subspace.zero(field, ambient)
    prev = a.dims[n - 1]
    if prev == 0 or s.dim == 0:
        return ambient, Subspace.zero(field, ambient)
    # image of A_{n-1} tensor S under mult tensor id_U
    carrier = Mat.eye(field, prev).kron(Mat(field, s.basis))
    push = a.mult[(n - 1, 1)].kron(Mat.eye(field, u_dim))
    rows = carrier @ push.T
    rel = Subspace.from_rows(field, ambient, rows.a)
    return ambient - rel.dim, rel


def quadratic_part(a: GradedAlgebraTable, m: Optional[GradedModuleTable] = None) -> QuadraticPart:
    """Quadratic part qA = {A_1, ker(A_1 A_1 -> A_2)} and the map qA -> A.

    The comparison dict records, degree by degree, whether the canonical map
    (from the quadratic part, resp. from {M_0, ker(A_1 M_0 -> M_1)}) is an
    isomorphism, only injective, or not injective.
    """
    field = a.field
    d1 = a.dims[1]
    r = kernel(a.mult[(1, 1)])
    labels = tuple(f"x{i}" for i in range(d1))
    pres = QuadPresentation(field, labels, r)
    comparison = {}
    for n in range(a.max_degree + 1):
        comp = component(pres, ALGEBRA, n)
        phi = _iterated_mult(a, n)
        if n >= 2:
            rel = Subspace.zero(field, d1**n)
            for sub in shift_collection(pres, n):
                rel = rel.sum(sub)
            assert _kills(phi, rel)
            lifted = phi @ rel.section_of_quotient()
        else:
            lifted = phi
        comparison[n] = _compare(lifted.rank(), comp.dim, a.dims[n])
    if m is None:
        return QuadraticPart(pres, comparison)

    if m.side != LEFT:
        raise ValueError("quadratic parts are computed for left modules")
    u = m.dims[0]
    s = kernel(m.action[(1, 0)])
    mpres = QuadModulePresentation(field, d1, tuple(f"u{i}" for i in range(u)), s)
    mcomparison = {}
    for n in range(m.max_degree + 1):
        dim_qn, rel = module_component_over_table(a, u, s, n)
        act = m.action[(n, 0)]
        assert _kills(act, rel)
        lifted = act @ rel.section_of_quotient()
        mcomparison[n] = _compare(lifted.rank(), dim_qn, m.dims[n])
    return QuadraticPart(pres, comparison, mpres, mcomparison)


def _kills(m: Mat, sub: Subspace) -> bool:
    if sub.dim == 0:
        return True
    return (m @ Mat(m.field, sub.basis).T).is_zero()


# ---------------------------------------------------------------------------
# convenience presentations and table surgery


def free_presentation(field: Field, labels: tuple[str, ...]) -> QuadPresentation:
    d = len(labels)
    return QuadPresentation(field, labels, Subspace.zero(field, d * d))


def polynomial_presentation(field: Field, labels: tuple[str, ...]) -> QuadPresentation:
    """T(V)/(commutators): x_i x_j - x_j x_i for i < j."""
    d = len(labels)
    rows = []
    for i in range(d):
        for j in range(i + 1, d):
            v = [0] * (d * d)
            v[i * d + j] = 1
            v[j * d + i] = -1
            rows.append(v)
    return QuadPresentation(field, labels, Subspace.from_rows(field, d * d, rows))


def opposite_table(a: GradedAlgebraTable) -> GradedAlgebraTable:
    """Same dims, multiplication composed with the factor flip."""
    mult = {}
    for (i, j), m in a.mult.items():
        mult[(i, j)] = _flip_cols(a.mult[(j, i)], a.dims[j], a.dims[i])
    return GradedAlgebraTable(a.field, a.dims, mult)


def opposite_module_table(m: GradedModuleTable, opp: GradedAlgebraTable) -> GradedModuleTable:
    """Left module over A becomes right module over A-opposite (and back)."""
    a = m.algebra
    action = {}
    for (i, j), blk in m.action.items():
        if m.side == LEFT:
            action[(i, j)] = _flip_cols(blk, a.dims[i], m.dims[j])
        else:
            action[(i, j)] = _flip_cols(blk, m.dims[j], a.dims[i])
    side = RIGHT if m.side == LEFT else LEFT
    return GradedModuleTable(opp, m.dims, action, side)


def shift_module_down(m: GradedModuleTable, k: int) -> GradedModuleTable:
    """Regrade M(-k): new degree j holds the old degree j+k; requires the
    bottom k levels to vanish."""
    if any(m.dims[:k]):
        raise ValueError(f"cannot shift down by {k}: low degrees are nonzero")
    a = m.algebra
    n = m.max_degree
    dims = tuple(m.dims[k:]) + (0,) * k
    action = {}
    for i in range(n + 1):
        for j in range(n + 1 - i):
            if i + j + k <= n:
                action[(i, j)] = m.action[(i, j + k)]
            else:
                action[(i, j)] = Mat.zeros(a.field, dims[i + j] if i + j <= n else 0,
                                           a.dims[i] * dims[j])
    return GradedModuleTable(a, dims, action, m.side)


def submodule_table(m: GradedModuleTable, subs: list[Subspace]) -> GradedModuleTable:
    """Module structure on per-degree subspaces closed under the action."""
    a = m.algebra
    field = a.field
    dims = tuple(s.dim for s in subs)
    action = {}
    for i in range(m.max_degree + 1):
        for j in range(m.max_degree + 1 - i):
            src = Mat.eye(field, a.dims[i]).kron(Mat(field, subs[j].basis))
            pushed = src @ m.action[(i, j)].T if m.side == LEFT else (
                Mat(field, subs[j].basis).kron(Mat.eye(field, a.dims[i])) @ m.action[(i, j)].T
            )
            action[(i, j)] = solve_in_span(Mat(field, subs[i + j].basis), pushed).T
    return GradedModuleTable(a, dims, action, m.side)


def quotient_module_table(m: GradedModuleTable, subs: list[Subspace]) -> GradedModuleTable:
    """Quotient by per-degree subspaces closed under the action."""
    a = m.algebra
    field = a.field
    projs = [s.quotient_map() for s in subs]
    sects = [s.section_of_quotient() for s in subs]
    dims = tuple(pr.rows for pr in projs)
    action = {}
    for i in range(m.max_degree + 1):
        for j in range(m.max_degree + 1 - i):
            if m.side == LEFT:
                lift = Mat.eye(field, a.dims[i]).kron(sects[j])
            else:
                lift = sects[j].kron(Mat.eye(field, a.dims[i]))
            action[(i, j)] = projs[i + j] @ m.action[(i, j)] @ lift
    return GradedModuleTable(a, dims, action, m.side)
