"""Bigraded homology engines.

Three complexes drive every verdict downstream: the two-sided bar complex
N otimes A_+^i otimes M computing Tor, the reduced cobar complex
P otimes C_+^i otimes Q computing Cot/Ext, and the Koszul complexes pairing
an algebra with its dual coalgebra.  Dimensions come from exact rank
arithmetic; cycle representatives are extracted only on request.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import DEFAULT, BudgetError, Config, check_ambient
from .exactlin import Field, Mat, Subspace, echelonize, kernel, solve_in_span
from .quadratic import (
    COALGEBRA,
    LEFT,
    RIGHT,
    GradedAlgebraTable,
    GradedModuleTable,
    QuadModulePresentation,
    QuadPresentation,
    component,
    table_from_presentation,
)

HOLDS = "holds"
FAILS_AT = "fails_at"
INCONCLUSIVE = "inconclusive"

HOMOLOGY = "Homology"
DISTRIBUTIVITY = "Distributivity"
KOSZUL_COMPLEX = "KoszulComplex"


@dataclass(frozen=True, eq=False)
class Certificate:
    """Window-bounded exactness/vanishing verdict.

    ``status`` is one of HOLDS, FAILS_AT, INCONCLUSIVE; a failure carries
    the offending bidegree and the homology dimension found there.  A
    certificate never claims anything beyond its window.
    """

    subject: str
    window: tuple
    status: str
    methods_used: tuple
    agreement: bool = True
    fail_at: tuple = None
    witness_dim: int = None
    notes: tuple = ()

    def __post_init__(self):
        if self.status not in (HOLDS, FAILS_AT, INCONCLUSIVE):
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == FAILS_AT) != (self.fail_at is not None):
            raise ValueError("fail_at is set exactly when the status is a failure")

    @property
    def holds(self) -> bool:
        return self.status == HOLDS


# ---------------------------------------------------------------------------
# finite-dimensional coalgebras and comodules


@dataclass(frozen=True, eq=False)
class FDCoalgebra:
    """Coaugmented coalgebra on k^dim: delta (C -> C tensor C), counit eps,
    coaugmentation chi with eps @ chi = id."""

    field: Field
    dim: int
    delta: Mat
    eps: Mat
    chi: Mat

    def __post_init__(self):
        d = self.dim
        if (self.delta.rows, self.delta.cols) != (d * d, d):
            raise ValueError("delta must map C to C tensor C")
        if (self.eps.rows, self.eps.cols) != (1, d):
            raise ValueError("eps must map C to k")
        if (self.chi.rows, self.chi.cols) != (d, 1):
            raise ValueError("chi must map k to C")
        eye = Mat.eye(self.field, d)
        left = self.eps.kron(eye) @ self.delta
        right = eye.kron(self.eps) @ self.delta
        if left != eye or right != eye:
            raise ValueError("counit identity fails")
        one = self.delta.kron(eye) @ self.delta
        two = eye.kron(self.delta) @ self.delta
        if one != two:
            raise ValueError("comultiplication is not coassociative")
        if self.eps @ self.chi != Mat.eye(self.field, 1):
            raise ValueError("eps after chi must be the identity on k")

    def plus_subspace(self) -> Subspace:
        """ker eps, the complement of the coaugmentation."""
        return kernel(self.eps)

    def plus_projection(self) -> Mat:
        """Coordinates map C -> C_+ with kernel chi(k)."""
        plus = self.plus_subspace()
        d = self.dim
        # c - chi(eps(c)) lands in ker eps; extract pivot coordinates
        p0 = Mat.eye(self.field, d) - self.chi @ self.eps
        sel = self.field.zeros((plus.dim, d))
        one = Fraction(1) if self.field.char is None else 1
        for k, col in enumerate(plus.pivots):
            sel[k, col] = one
        return Mat(self.field, sel) @ p0

    def plus_inclusion(self) -> Mat:
        return Mat(self.field, self.plus_subspace().basis.T)


@dataclass(frozen=True, eq=False)
class FDComodule:
    """Comodule over an FDCoalgebra; left coactions map P to C tensor P,
    right coactions map P to P tensor C."""

    coalgebra: FDCoalgebra
    dim: int
    coact: Mat
    side: str = LEFT

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ValueError(f"unknown side {self.side!r}")
        c, p = self.coalgebra, self.dim
        if (self.coact.rows, self.coact.cols) != (c.dim * p, p):
            raise ValueError("coaction has the wrong shape")
        eyep = Mat.eye(c.field, p)
        eyec = Mat.eye(c.field, c.dim)
        if self.side == LEFT:
            one = c.delta.kron(eyep) @ self.coact
            two = eyec.kron(self.coact) @ self.coact
            counit = c.eps.kron(eyep) @ self.coact
        else:
            one = eyep.kron(c.delta) @ self.coact
            two = self.coact.kron(eyec) @ self.coact
            counit = eyep.kron(c.eps) @ self.coact
        if one != two:
            raise ValueError("coaction axiom fails")
        if counit != eyep:
            raise ValueError("counit compatibility fails")


def trivial_comodule(c: FDCoalgebra, side: str = LEFT) -> FDComodule:
    """k with coaction through the coaugmentation."""
    return FDComodule(c, 1, c.chi, side)


def cofree_comodule(c: FDCoalgebra, w: int, side: str = LEFT) -> FDComodule:
    """C tensor W (resp. W tensor C) with the comultiplication coaction."""
    eye = Mat.eye(c.field, w)
    if side == LEFT:
        return FDComodule(c, c.dim * w, c.delta.kron(eye), LEFT)
    return FDComodule(c, w * c.dim, eye.kron(c.delta), RIGHT)


# ---------------------------------------------------------------------------
# graded coalgebra tables


@dataclass(frozen=True, eq=False)
class GradedCoalgebraTable:
    """Degreewise comultiplication components C_{i+j} -> C_i tensor C_j.

    Degree 0 is the one-dimensional coaugmentation slot; components with
    i = 0 or j = 0 are forced to be identities.
    """

    field: Field
    dims: tuple
    comult: dict  # (i, j) -> Mat

    def __post_init__(self):
        if not self.dims or self.dims[0] != 1:
            raise ValueError("graded coalgebra tables start with a 1-dimensional counit slot")
        n = self.max_degree
        for i in range(n + 1):
            for j in range(n + 1 - i):
                m = self.comult.get((i, j))
                if m is None:
                    raise ValueError(f"missing comultiplication block {(i, j)}")
                if (m.rows, m.cols) != (self.dims[i] * self.dims[j], self.dims[i + j]):
                    raise ValueError(f"comultiplication block {(i, j)} has wrong shape")
        for j in range(n + 1):
            eye = Mat.eye(self.field, self.dims[j])
            if self.comult[(0, j)] != eye or self.comult[(j, 0)] != eye:
                raise ValueError("counit components must be identities")
        eye = lambda k: Mat.eye(self.field, k)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                for k in range(n + 1 - i - j):
                    one = self.comult[(i, j)].kron(eye(self.dims[k])) @ self.comult[(i + j, k)]
                    two = eye(self.dims[i]).kron(self.comult[(j, k)]) @ self.comult[(i, j + k)]
                    if one != two:
                        raise ValueError(f"coassociativity fails on degrees {(i, j, k)}")

    @property
    def max_degree(self) -> int:
        return len(self.dims) - 1


@dataclass(frozen=True, eq=False)
class GradedComoduleTable:
    """Degreewise coaction components over a GradedCoalgebraTable.

    Left comodules store M_{i+j} -> C_i tensor M_j; right comodules store
    M_{i+j} -> M_j tensor C_i.  Keys are (i, j) in both cases.
    """

    coalgebra: GradedCoalgebraTable
    dims: tuple
    coact: dict  # (i, j) -> Mat
    side: str = LEFT

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ValueError(f"unknown side {self.side!r}")
        c = self.coalgebra
        n = self.max_degree
        if len(self.dims) != len(c.dims):
            raise ValueError("comodule table must cover the same degree range as its coalgebra")
        for i in range(n + 1):
            for j in range(n + 1 - i):
                m = self.coact.get((i, j))
                if m is None:
                    raise ValueError(f"missing coaction block {(i, j)}")
                if (m.rows, m.cols) != (c.dims[i] * self.dims[j], self.dims[i + j]):
                    raise ValueError(f"coaction block {(i, j)} has wrong shape")
        for j in range(n + 1):
            if self.coact[(0, j)] != Mat.eye(c.field, self.dims[j]):
                raise ValueError("counit coaction components must be identities")
        eye = lambda k: Mat.eye(c.field, k)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                for k in range(n + 1 - i - j):
                    if self.side == LEFT:
                        one = c.comult[(i, j)].kron(eye(self.dims[k])) @ self.coact[(i + j, k)]
                        two = eye(c.dims[i]).kron(self.coact[(j, k)]) @ self.coact[(i, j + k)]
                    else:
                        # M_{i+j+k} -> M_k (x) C_j (x) C_i both ways
                        one = self.coact[(j, k)].kron(eye(c.dims[i])) @ self.coact[(i, j + k)]
                        two = eye(self.dims[k]).kron(c.comult[(j, i)]) @ self.coact[(i + j, k)]
                    if one != two:
                        raise ValueError(f"coaction compatibility fails on degrees {(i, j, k)}")

    @property
    def max_degree(self) -> int:
        return len(self.dims) - 1


def trivial_comodule_table(c: GradedCoalgebraTable, side: str = LEFT) -> GradedComoduleTable:
    """k concentrated in degree 0."""
    n = c.max_degree
    dims = (1,) + (0,) * n
    coact = {}
    for i in range(n + 1):
        for j in range(n + 1 - i):
            coact[(i, j)] = Mat.zeros(c.field, c.dims[i] * dims[j], dims[i + j])
    coact[(0, 0)] = Mat.eye(c.field, 1)
    return GradedComoduleTable(c, dims, coact, side)


def _coords_in(basis: Mat, vectors: Mat) -> Mat:
    """Row coordinates of ``vectors`` in ``basis`` (rows span the space)."""
    return solve_in_span(basis, vectors)


def coalgebra_table_from_presentation(
    p: QuadPresentation,
    max_degree: int,
    mod: QuadModulePresentation = None,
    config: Config = DEFAULT,
):
    """Realize the degreewise components of the dual coalgebra side of
    ``p`` (and of ``mod``) as tables of deconcatenation components."""
    field = p.field
    comps = [component(p, COALGEBRA, n, config=config) for n in range(max_degree + 1)]
    dims = tuple(c.dim for c in comps)
    bases = [Mat(field, c.realization.a) for c in comps]
    comult = {}
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            if dims[i] * dims[j] == 0 or dims[i + j] == 0:
                comult[(i, j)] = Mat.zeros(field, dims[i] * dims[j], dims[i + j])
                continue
            coords = _coords_in(bases[i].kron(bases[j]), bases[i + j])
            comult[(i, j)] = coords.T
    table = GradedCoalgebraTable(field, dims, comult)
    if mod is None:
        return table
    mcomps = [component(p, COALGEBRA, n, mod=mod, config=config) for n in range(max_degree + 1)]
    mdims = tuple(c.dim for c in mcomps)
    mbases = [Mat(field, c.realization.a) for c in mcomps]
    coact = {}
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            if dims[i] * mdims[j] == 0 or mdims[i + j] == 0:
                coact[(i, j)] = Mat.zeros(field, dims[i] * mdims[j], mdims[i + j])
                continue
            coords = _coords_in(bases[i].kron(mbases[j]), mbases[i + j])
            coact[(i, j)] = coords.T
    return table, GradedComoduleTable(table, mdims, coact, LEFT)


def corestricted_comodule(
    c: GradedCoalgebraTable,
    g: dict,
    d: GradedCoalgebraTable,
    side: str = RIGHT,
) -> GradedComoduleTable:
    """C as a comodule over D through a degreewise coalgebra map g: C -> D.

    ``g`` maps degrees to matrices C_n -> D_n; g_0 must be the identity.
    """
    n = c.max_degree
    coact = {}
    for i in range(n + 1):
        for j in range(n + 1 - i):
            gi = g[i]
            if side == RIGHT:
                coact[(i, j)] = Mat.eye(c.field, c.dims[j]).kron(gi) @ c.comult[(j, i)]
            else:
                coact[(i, j)] = gi.kron(Mat.eye(c.field, c.dims[j])) @ c.comult[(i, j)]
    return GradedComoduleTable(d, c.dims, coact, side)


# ---------------------------------------------------------------------------
# bigraded dimension tables


@dataclass(frozen=True, eq=False)
class BigradedTable:
    """Dimension table over a window.

    Bigraded entries are keyed (i, j) for 0 <= i <= i_max, i <= j <= j_max;
    single-graded tables (window (i_max, None)) are keyed by i alone.
    """

    window: tuple
    entries: dict
    representatives: dict = None

    def __post_init__(self):
        i_max, j_max = self.window
        if j_max is None:
            keys = set(range(i_max + 1))
        else:
            keys = {(i, j) for i in range(i_max + 1) for j in range(i, j_max + 1)}
        missing = keys - set(self.entries)
        if missing:
            raise ValueError(f"missing entries {sorted(missing)}")
        if any(v < 0 for v in self.entries.values()):
            raise ValueError("dimensions must be nonnegative")

    def __getitem__(self, key):
        return self.entries[key]

    def total(self) -> int:
        return sum(self.entries.values())

    def diagonal_only(self) -> bool:
        """True when every off-diagonal entry vanishes."""
        if self.window[1] is None:
            raise ValueError("single-graded table has no diagonal")
        return all(v == 0 for (i, j), v in self.entries.items() if i != j)


# ---------------------------------------------------------------------------
# shared chain-complex plumbing


def _assemble(field, src, tgt, blocks) -> Mat:
    """Dense map out of a direct sum of summands.

    ``src``/``tgt`` are lists of (signature, dim); ``blocks`` maps pairs of
    signatures to ndarrays, accumulated additively.
    """
    rows = sum(d for _, d in tgt)
    cols = sum(d for _, d in src)
    out = field.zeros((rows, cols))
    roff = {}
    off = 0
    for sig, d in tgt:
        roff[sig] = off
        off += d
    coff = 0
    for sig, d in src:
        for tsig, blk in blocks.get(sig, []):
            r = roff[tsig]
            out[r:r + blk.shape[0], coff:coff + blk.shape[1]] += blk
        coff += d
    if field.char is not None:
        out %= field.char
    return Mat(field, out)


@dataclass(eq=False)
class _Slot:
    """Homology at one term: canonical representatives and class coordinates."""

    dim: int
    cycles: Subspace
    reps: Mat          # rows: one representative per basis class
    _classes: Mat      # quotient projection in cycle coordinates

    def class_coords(self, vectors: Mat) -> Mat:
        """Rows of homology-class coordinates; raises if a row is no cycle."""
        coords = solve_in_span(Mat(vectors.field, self.cycles.basis), vectors)
        return Mat(vectors.field, (self._classes @ coords.T).a.T)


def _homology_slot(field, term_dim: int, d_out: Mat, d_in: Mat) -> _Slot:
    """ker(d_out)/im(d_in) with section-based canonical representatives."""
    if d_out is not None and d_out.rows:
        cycles = kernel(d_out)
    else:
        cycles = Subspace.full(field, term_dim)
    if d_in is not None and d_in.cols:
        image = echelonize(Mat(field, d_in.a.T))
    else:
        image = Subspace.zero(field, term_dim)
    if cycles.dim:
        img_coords = echelonize(solve_in_span(Mat(field, cycles.basis), Mat(field, image.basis)))
    else:
        img_coords = Subspace.zero(field, 0)
    proj = img_coords.quotient_map()
    sect = img_coords.section_of_quotient()
    reps = Mat(field, sect.a.T) @ Mat(field, cycles.basis)
    return _Slot(cycles.dim - image.dim, cycles, reps, proj)


# ---------------------------------------------------------------------------
# bar complex / Tor


def _compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def _bar_summands(n, a, m, i, j):
    """Signatures (a0, sig, b) of N_{a0} (x) A_sig (x) M_b in degree j."""
    out = []
    for a0 in range(j + 1):
        for b in range(j + 1 - a0):
            for sig in _compositions(j - a0 - b, i):
                d = n.dims[a0] * m.dims[b]
                for s in sig:
                    d *= a.dims[s]
                if d:
                    out.append(((a0, sig, b), d))
    return out


def _bar_differential(n, a, m, i, j, src, tgt, config):
    """d_i: T_{i,j} -> T_{i-1,j}, the alternating sum of merges."""
    field = a.field
    tdims = dict(tgt)
    blocks = {}
    for (a0, sig, b), d in src:
        outs = []
        eye = lambda k: Mat.eye(field, k)
        rest = lambda dims: int(np.prod([1] + list(dims)))
        # merge into N
        t_sig = (a0 + sig[0], sig[1:], b)
        if t_sig in tdims:
            right = rest([a.dims[s] for s in sig[1:]]) * m.dims[b]
            blk = n.action[(sig[0], a0)].kron(eye(right))
            outs.append((t_sig, blk.a))
        # internal merges
        for t in range(1, i):
            new = sig[:t - 1] + (sig[t - 1] + sig[t],) + sig[t + 1:]
            t_sig = (a0, new, b)
            if t_sig not in tdims:
                continue
            left = n.dims[a0] * rest([a.dims[s] for s in sig[:t - 1]])
            right = rest([a.dims[s] for s in sig[t + 1:]]) * m.dims[b]
            blk = eye(left).kron(a.mult[(sig[t - 1], sig[t])]).kron(eye(right))
            arr = blk.a if t % 2 == 0 else (-blk).a
            outs.append((t_sig, arr))
        # merge into M
        t_sig = (a0, sig[:-1], b + sig[-1])
        if t_sig in tdims:
            left = n.dims[a0] * rest([a.dims[s] for s in sig[:-1]])
            blk = eye(left).kron(m.action[(sig[-1], b)])
            arr = blk.a if i % 2 == 0 else (-blk).a
            outs.append((t_sig, arr))
        blocks[(a0, sig, b)] = outs
    return _assemble(field, src, tgt, blocks)


def tor_bigraded(
    n: GradedModuleTable,
    a: GradedAlgebraTable,
    m: GradedModuleTable,
    window: tuple,
    representatives: bool = False,
    config: Config = DEFAULT,
) -> BigradedTable:
    """Bigraded Tor of (N, M) over A via the two-sided bar complex.

    N must be a right module table and M a left one; entry (i, j) is the
    homology of N (x) A_+^i (x) M in internal degree j.
    """
    if n.side != RIGHT or m.side != LEFT:
        raise ValueError("tor takes a right module, the algebra, and a left module")
    if n.algebra.dims != a.dims or m.algebra.dims != a.dims:
        raise ValueError("module tables must live over the given algebra")
    i_max, j_max = window
    if j_max > a.max_degree:
        raise BudgetError(f"window degree {j_max} exceeds the table degree {a.max_degree}")
    field = a.field
    entries = {}
    reps = {} if representatives else None
    for j in range(j_max + 1):
        summands = {i: _bar_summands(n, a, m, i, j) for i in range(min(i_max, j) + 2)}
        for s in summands.values():
            check_ambient(sum(d for _, d in s), "bar term", config)
        diffs = {}
        for i in range(1, min(i_max, j) + 2):
            diffs[i] = _bar_differential(n, a, m, i, j, summands[i], summands[i - 1], config)
        for i in range(1, min(i_max, j) + 1):
            if not (diffs[i] @ diffs[i + 1]).is_zero():
                raise AssertionError(f"bar differential fails d*d = 0 at {(i + 1, j)}")
        ranks = {i: d.rank() for i, d in diffs.items()}
        for i in range(min(i_max, j) + 1):
            t = sum(d for _, d in summands[i])
            entries[(i, j)] = t - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if representatives:
                slot = _homology_slot(field, t, diffs.get(i), diffs.get(i + 1))
                reps[(i, j)] = slot.reps
    for i in range(i_max + 1):
        for j in range(i, j_max + 1):
            entries.setdefault((i, j), 0)
            if representatives:
                reps.setdefault((i, j), Mat.zeros(field, 0, 0))
    return BigradedTable((i_max, j_max), entries, reps)


# ---------------------------------------------------------------------------
# reduced cobar complex / Cot


class CobarComplex:
    """Reduced cobar complex P (x) C_+^i (x) Q of an FD coalgebra.

    Terms are indexed by cohomological degree i; the coface differential
    raises i.  Exposes dimensions, differentials, and canonical cocycle
    representatives per degree.
    """

    def __init__(self, c: FDCoalgebra, p: FDComodule, q: FDComodule,
                 i_max: int, config: Config = DEFAULT):
        if p.side != RIGHT or q.side != LEFT:
            raise ValueError("cobar takes a right comodule, the coalgebra, and a left comodule")
        if p.coalgebra.dim != c.dim or q.coalgebra.dim != c.dim:
            raise ValueError("comodules must live over the given coalgebra")
        self.c, self.p, self.q = c, p, q
        self.i_max = i_max
        field = c.field
        self.field = field
        pi = c.plus_projection()
        iota = c.plus_inclusion()
        cp = pi.rows
        self.plus_dim = cp
        eye = lambda k: Mat.eye(field, k)
        self.dbar = pi.kron(pi) @ c.delta @ iota
        self.rho_p = eye(p.dim).kron(pi) @ p.coact
        self.rho_q = pi.kron(eye(q.dim)) @ q.coact
        self.terms = [p.dim * cp**i * q.dim for i in range(i_max + 2)]
        for t in self.terms:
            check_ambient(t, "cobar term", config)
        self.d = []
        for i in range(i_max + 1):
            m = field.zeros((self.terms[i + 1], self.terms[i]))
            total = Mat(field, m)
            blk = self.rho_p.kron(eye(cp**i * q.dim))
            total = total + blk
            for t in range(1, i + 1):
                blk = eye(p.dim * cp**(t - 1)).kron(self.dbar).kron(
                    eye(cp**(i - t) * q.dim))
                total = total + (blk if t % 2 == 0 else -blk)
            blk = eye(p.dim * cp**i).kron(self.rho_q)
            total = total + (blk if (i + 1) % 2 == 0 else -blk)
            self.d.append(total)
        for i in range(i_max):
            if not (self.d[i + 1] @ self.d[i]).is_zero():
                raise AssertionError(f"cobar differential fails d*d = 0 at degree {i}")
        self._ranks = None
        self._slots = {}

    def ranks(self):
        if self._ranks is None:
            self._ranks = [d.rank() for d in self.d]
        return self._ranks

    def cohomology_dim(self, i: int) -> int:
        r = self.ranks()
        incoming = r[i - 1] if i >= 1 else 0
        return self.terms[i] - r[i] - incoming

    def slot(self, i: int) -> _Slot:
        if i not in self._slots:
            d_in = self.d[i - 1] if i >= 1 else None
            self._slots[i] = _homology_slot(self.field, self.terms[i], self.d[i], d_in)
        return self._slots[i]


def induced_cohomology_map(g_plus: Mat, src: CobarComplex, tgt: CobarComplex, i: int) -> Mat:
    """Map H^i(src) -> H^i(tgt) induced by a coalgebra morphism.

    ``g_plus`` is the morphism restricted to augmentation coideals, in
    C_+ coordinates; the comodule slots of the two complexes must match
    dimensionwise (trivial everywhere this is used).
    """
    field = src.field
    s, t = src.slot(i), tgt.slot(i)
    lift = Mat.eye(field, src.p.dim)
    for _ in range(i):
        lift = lift.kron(g_plus)
    lift = lift.kron(Mat.eye(field, src.q.dim))
    pushed = Mat(field, (lift @ Mat(field, s.reps.a.T)).a.T)
    return t.class_coords(pushed)


def cohomology_tables(
    c: FDCoalgebra,
    p: FDComodule = None,
    i_max: int = 3,
    config: Config = DEFAULT,
):
    """H^*(C) as a graded algebra table under the concatenation product
    (and H^*(C, P) as a left module table over it when ``p`` is given)."""
    field = c.field
    k_r = trivial_comodule(c, RIGHT)
    k_l = trivial_comodule(c, LEFT)
    cx = CobarComplex(c, k_r, k_l, i_max, config)
    dims = tuple(cx.cohomology_dim(i) for i in range(i_max + 1))
    slots = [cx.slot(i) for i in range(i_max + 1)]
    mult = {}
    for i in range(i_max + 1):
        for j in range(i_max + 1 - i):
            prods = []
            for ai in range(dims[i]):
                for bj in range(dims[j]):
                    prods.append(np.kron(slots[i].reps.a[ai], slots[j].reps.a[bj]))
            if prods:
                arr = field.array(np.array(prods))
                if field.char is not None:
                    arr %= field.char
                stacked = Mat(field, arr)
            else:
                stacked = Mat.zeros(field, 0, cx.terms[i + j])
            classes = slots[i + j].class_coords(stacked)
            mult[(i, j)] = Mat(field, classes.a.T)
    table = GradedAlgebraTable(field, dims, mult)
    if p is None:
        return table
    mcx = CobarComplex(c, k_r, p, i_max, config)
    mdims = tuple(mcx.cohomology_dim(i) for i in range(i_max + 1))
    mslots = [mcx.slot(i) for i in range(i_max + 1)]
    action = {}
    for i in range(i_max + 1):
        for j in range(i_max + 1 - i):
            prods = []
            for ai in range(dims[i]):
                for bj in range(mdims[j]):
                    prods.append(np.kron(slots[i].reps.a[ai], mslots[j].reps.a[bj]))
            if prods:
                arr = field.array(np.array(prods))
                if field.char is not None:
                    arr %= field.char
                stacked = Mat(field, arr)
            else:
                stacked = Mat.zeros(field, 0, mcx.terms[i + j])
            classes = mslots[i + j].class_coords(stacked)
            action[(i, j)] = Mat(field, classes.a.T)
    module = GradedModuleTable(table, mdims, action, LEFT)
    return table, module


# ---------------------------------------------------------------------------
# graded cobar


def _cobar_summands(p, c, q, i, j):
    out = []
    for a0 in range(j + 1):
        for b in range(j + 1 - a0):
            for sig in _compositions(j - a0 - b, i):
                d = p.dims[a0] * q.dims[b]
                for s in sig:
                    d *= c.dims[s]
                if d:
                    out.append(((a0, sig, b), d))
    return out


def _cobar_differential(p, c, q, i, j, src, tgt):
    field = c.field
    tdims = dict(tgt)
    eye = lambda k: Mat.eye(field, k)
    rest = lambda dims: int(np.prod([1] + list(dims)))
    blocks = {}
    for (a0, sig, b), d in src:
        outs = []
        # coaction on P
        for u in range(1, a0 + 1):
            t_sig = (a0 - u, (u,) + sig, b)
            if t_sig not in tdims:
                continue
            right = rest([c.dims[s] for s in sig]) * q.dims[b]
            blk = p.coact[(u, a0 - u)].kron(eye(right))
            outs.append((t_sig, blk.a))
        # splits of the interior factors
        for t in range(1, i + 1):
            s = sig[t - 1]
            for u in range(1, s):
                new = sig[:t - 1] + (u, s - u) + sig[t:]
                t_sig = (a0, new, b)
                if t_sig not in tdims:
                    continue
                left = p.dims[a0] * rest([c.dims[x] for x in sig[:t - 1]])
                right = rest([c.dims[x] for x in sig[t:]]) * q.dims[b]
                blk = eye(left).kron(c.comult[(u, s - u)]).kron(eye(right))
                arr = blk.a if t % 2 == 0 else (-blk).a
                outs.append((t_sig, arr))
        # coaction on Q
        for u in range(1, b + 1):
            t_sig = (a0, sig + (u,), b - u)
            if t_sig not in tdims:
                continue
            left = p.dims[a0] * rest([c.dims[s] for s in sig])
            blk = eye(left).kron(q.coact[(u, b - u)])
            arr = blk.a if (i + 1) % 2 == 0 else (-blk).a
            outs.append((t_sig, arr))
        blocks[(a0, sig, b)] = outs
    return _assemble(field, src, tgt, blocks)


def _cot_graded(p, c, q, window, representatives, config):
    i_max, j_max = window
    if j_max > c.max_degree:
        raise BudgetError(f"window degree {j_max} exceeds the table degree {c.max_degree}")
    field = c.field
    entries = {}
    reps = {} if representatives else None
    for j in range(j_max + 1):
        top = min(i_max, j) + 1
        summands = {i: _cobar_summands(p, c, q, i, j) for i in range(top + 1)}
        for s in summands.values():
            check_ambient(sum(d for _, d in s), "cobar term", config)
        diffs = {}
        for i in range(top):
            diffs[i] = _cobar_differential(p, c, q, i, j, summands[i], summands[i + 1])
        for i in range(top - 1):
            if not (diffs[i + 1] @ diffs[i]).is_zero():
                raise AssertionError(f"cobar differential fails d*d = 0 at {(i, j)}")
        ranks = {i: d.rank() for i, d in diffs.items()}
        for i in range(min(i_max, j) + 1):
            t = sum(d for _, d in summands[i])
            h = t - ranks.get(i, 0) - ranks.get(i - 1, 0)
            entries[(i, j)] = h
            if representatives:
                slot = _homology_slot(field, t, diffs.get(i), diffs.get(i - 1))
                reps[(i, j)] = slot.reps
    for i in range(i_max + 1):
        for j in range(i, j_max + 1):
            entries.setdefault((i, j), 0)
            if representatives:
                reps.setdefault((i, j), Mat.zeros(field, 0, 0))
    return BigradedTable((i_max, j_max), entries, reps)


def cot_bigraded(p, c, q, window, representatives: bool = False,
                 config: Config = DEFAULT) -> BigradedTable:
    """Cotorsion dims via the reduced cobar complex.

    For an FDCoalgebra the result is single-graded (window may be an int);
    for graded tables it is bigraded with entry (i, j) the cohomology of
    the weight-j slice in cohomological degree i.
    """
    if isinstance(c, FDCoalgebra):
        i_max = window if isinstance(window, int) else window[0]
        cx = CobarComplex(c, p, q, i_max, config)
        entries = {i: cx.cohomology_dim(i) for i in range(i_max + 1)}
        reps = None
        if representatives:
            reps = {i: cx.slot(i).reps for i in range(i_max + 1)}
        return BigradedTable((i_max, None), entries, reps)
    return _cot_graded(p, c, q, window, representatives, config)


# ---------------------------------------------------------------------------
# Koszul complexes


def _exactness_run(terms, diffs, skip):
    """First failure of exactness, or None: terms map q -> dim, diffs map
    q -> Mat (sending term q to term q-1); slots in ``skip`` are not checked."""
    ranks = {q: d.rank() for q, d in diffs.items()}
    for q in sorted(terms):
        if q in skip:
            continue
        h = terms[q] - ranks.get(q, 0) - ranks.get(q + 1, 0)
        if h:
            return q, h
    return None


def koszul_check(
    p: QuadPresentation,
    mod: QuadModulePresentation = None,
    window: int = 4,
    config: Config = DEFAULT,
) -> Certificate:
    """Exactness of the Koszul complexes of a quadratic presentation.

    Checks K(A, A?) at every term with p + q > 0; with a module also
    checks that K(A, M?) resolves M (exact above weight 0, cokernel
    matching M at weight 0) and that K(A?, M) coresolves the dual
    comodule (exact below the M_0 end, whose kernel is that comodule
    by construction).  delta squared is asserted on every complex.
    """
    field = p.field
    built = table_from_presentation(p, window, mod=mod, config=config)
    if mod is None:
        a = built
        mtab = None
    else:
        a, mtab = built
        ctab, mcotab = coalgebra_table_from_presentation(p, window, mod, config)
    if mod is None:
        ctab = coalgebra_table_from_presentation(p, window, config=config)
    eye = lambda k: Mat.eye(field, k)

    def algebra_complex(n):
        terms = {q: a.dims[n - q] * ctab.dims[q] for q in range(n + 1)}
        diffs = {}
        for q in range(1, n + 1):
            pdeg = n - q
            delta = (a.mult[(pdeg, 1)].kron(eye(ctab.dims[q - 1]))
                     @ eye(a.dims[pdeg]).kron(ctab.comult[(1, q - 1)]))
            diffs[q] = delta
        return terms, diffs

    def module_complex(n):
        terms = {q: a.dims[n - q] * mcotab.dims[q] for q in range(n + 1)}
        diffs = {}
        for q in range(1, n + 1):
            pdeg = n - q
            delta = (a.mult[(pdeg, 1)].kron(eye(mcotab.dims[q - 1]))
                     @ eye(a.dims[pdeg]).kron(mcotab.coact[(1, q - 1)]))
            diffs[q] = delta
        return terms, diffs

    def dual_complex(n):
        # C_p (x) M_q, differential toward lower p
        terms = {pp: ctab.dims[pp] * mtab.dims[n - pp] for pp in range(n + 1)}
        diffs = {}
        for pp in range(1, n + 1):
            qq = n - pp
            delta = (eye(ctab.dims[pp - 1]).kron(mtab.action[(1, qq)])
                     @ ctab.comult[(pp - 1, 1)].kron(eye(mtab.dims[qq])))
            diffs[pp] = delta
        return terms, diffs

    for n in range(1, window + 1):
        for t in (a.dims[i] * ctab.dims[n - i] for i in range(n + 1)):
            check_ambient(t, "Koszul term", config)
        terms, diffs = algebra_complex(n)
        for q in range(2, n + 1):
            if not (diffs[q - 1] @ diffs[q]).is_zero():
                raise AssertionError(f"Koszul differential fails delta*delta = 0 at {(n - q, q)}")
        bad = _exactness_run(terms, diffs, skip=())
        if bad is not None:
            q, h = bad
            return Certificate(
                subject=f"K(A,A?) of {p.describe()}",
                window=(window, window),
                status=FAILS_AT,
                methods_used=(KOSZUL_COMPLEX,),
                fail_at=(n - q, q),
                witness_dim=h,
            )
    if mod is not None:
        for n in range(1, window + 1):
            terms, diffs = module_complex(n)
            for q in range(2, n + 1):
                if not (diffs[q - 1] @ diffs[q]).is_zero():
                    raise AssertionError(
                        f"Koszul differential fails delta*delta = 0 at {(n - q, q)}")
            bad = _exactness_run(terms, diffs, skip=(0,))
            if bad is None:
                coker = terms[0] - diffs[1].rank() if 1 in diffs else terms[0]
                want = mtab.dims[n]
                if coker != want:
                    bad = (0, coker - want)
            if bad is not None:
                q, h = bad
                return Certificate(
                    subject=f"K(A,M?) of {p.describe()}",
                    window=(window, window),
                    status=FAILS_AT,
                    methods_used=(KOSZUL_COMPLEX,),
                    fail_at=(n - q, q),
                    witness_dim=h,
                    notes=("module complex",),
                )
            terms, diffs = dual_complex(n)
            for pp in range(2, n + 1):
                if not (diffs[pp - 1] @ diffs[pp]).is_zero():
                    raise AssertionError(
                        f"Koszul differential fails delta*delta = 0 at {(pp, n - pp)}")
            # the kernel at the M_0 end is the dual comodule component itself
            bad = _exactness_run(terms, diffs, skip=(n,))
            if bad is not None:
                pp, h = bad
                return Certificate(
                    subject=f"K(A?,M) of {p.describe()}",
                    window=(window, window),
                    status=FAILS_AT,
                    methods_used=(KOSZUL_COMPLEX,),
                    fail_at=(pp, n - pp),
                    witness_dim=h,
                    notes=("dual module complex",),
                )
    subject = f"K(A,A?) of {p.describe()}"
    if mod is not None:
        subject += " with module"
    return Certificate(
        subject=subject,
        window=(window, window),
        status=HOLDS,
        methods_used=(KOSZUL_COMPLEX,),
    )
