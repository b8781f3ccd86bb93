"""The graded simple algebra F^cH (x) M_m(F) built from a presentation.

A presentation is (H, c, g-tuple); the induced grading puts the basis element
u_h (x) e_{i,j} in degree g_i^-1 h g_j.  Elements are sparse maps from basis
triples (h, i, j) to cyclotomic scalars.  The module also implements the
three presentation moves, deterministic normalization, presentation
equivalence, crossed-product and graded-division checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cohomology import Cocycle2, classes_cohomologous
from .errors import (
    AlgebraMismatchError,
    CocycleError,
    HypothesisError,
    NotSubgroupError,
)
from .groups import CosetDecomposition, FiniteGroup, Subgroup
from .scalars import CycScalar, root_of_unity

Triple = tuple[int, int, int]  # (h, row, col): u_h (x) e_{row, col}, 0-based


@dataclass(frozen=True)
class Presentation:
    """The triple (H, c, g-tuple) defining a graded simple algebra."""

    group: FiniteGroup
    subgroup: Subgroup
    cocycle: Cocycle2
    grading: tuple[int, ...]

    def __post_init__(self):
        if self.subgroup.parent != self.group:
            raise NotSubgroupError("subgroup does not live in the presentation group")
        if self.cocycle.subgroup != self.subgroup:
            raise CocycleError("cocycle is defined on a different subgroup")
        if not self.grading:
            raise HypothesisError("grading tuple must be nonempty")
        for g in self.grading:
            if not (0 <= g < self.group.order):
                raise HypothesisError(f"grading entry {g} out of range")
        object.__setattr__(self, "grading", tuple(self.grading))

    @property
    def size(self) -> int:
        return len(self.grading)

    def validate(self) -> "Presentation":
        self.cocycle.require_valid()
        return self

    def cosets(self) -> CosetDecomposition:
        return self.subgroup.right_cosets()

    def coset_multiplicities(self) -> dict[int, int]:
        """Map canonical right-coset representative -> multiplicity in the tuple
        (all representatives appear, possibly with multiplicity 0)."""
        cosets = self.cosets()
        out = {rep: 0 for rep in cosets.reps}
        for g in self.grading:
            out[cosets.rep_of(g)] += 1
        return out


class GradedAlgebra:
    """Materialized algebra with an indexed homogeneous basis."""

    __slots__ = (
        "presentation",
        "basis",
        "index",
        "degree",
        "components",
        "_by_degree_row",
        "_exp",
        "_hmul",
        "_one",
    )

    def __init__(self, presentation: Presentation):
        presentation.validate()
        self.presentation = presentation
        H = presentation.subgroup
        G = presentation.group
        gs = presentation.grading
        m = len(gs)
        basis: list[Triple] = []
        degree: list[int] = []
        for h in H.members:
            for i in range(m):
                for j in range(m):
                    basis.append((h, i, j))
                    degree.append(G.mul(G.mul(G.inv(gs[i]), h), gs[j]))
        self.basis = tuple(basis)
        self.index = {t: k for k, t in enumerate(basis)}
        self.degree = tuple(degree)
        components: dict[int, list[int]] = {}
        by_row: dict[tuple[int, int], list[int]] = {}
        for k, t in enumerate(basis):
            g = degree[k]
            components.setdefault(g, []).append(k)
            by_row.setdefault((g, t[1]), []).append(k)
        self.components = {g: tuple(v) for g, v in components.items()}
        self._by_degree_row = {key: tuple(v) for key, v in by_row.items()}
        # Local copies for hot loops.
        self._exp = presentation.cocycle.exp
        self._hmul = G.mul
        self._one = None

    # -- structure ------------------------------------------------------------

    @property
    def group(self) -> FiniteGroup:
        return self.presentation.group

    @property
    def modulus(self) -> int:
        return self.presentation.cocycle.modulus

    @property
    def dim(self) -> int:
        return len(self.basis)

    def homogeneous_basis(self, g: int) -> tuple[int, ...]:
        """Indices of the basis elements of degree g (possibly empty)."""
        return self.components.get(g, ())

    def basis_by_degree_and_row(self, g: int, row: int) -> tuple[int, ...]:
        return self._by_degree_row.get((g, row), ())

    def mul_basis(self, a: Triple, b: Triple) -> Optional[tuple[int, Triple]]:
        """Structure constants: returns (scalar exponent, triple) or None for 0."""
        if a[2] != b[1]:
            return None
        return self._exp(a[0], b[0]), (self._hmul(a[0], b[0]), a[1], b[2])

    def support(self) -> frozenset[int]:
        return frozenset(g for g, comp in self.components.items() if comp)

    def is_connected(self) -> bool:
        gen = self.group.generated_subgroup(self.support())
        return len(gen) == self.group.order

    # -- elements ------------------------------------------------------------

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        if self._one is None:
            unit = CycScalar.one(self.modulus)
            terms = {(0, i, i): unit for i in range(self.presentation.size)}
            self._one = AlgebraElement(self, terms)
        return self._one

    def basis_element(self, k: int) -> "AlgebraElement":
        return AlgebraElement(self, {self.basis[k]: CycScalar.one(self.modulus)})

    def element(self, terms: dict[Triple, CycScalar]) -> "AlgebraElement":
        return AlgebraElement(self, terms)

    def __repr__(self) -> str:
        p = self.presentation
        return (
            f"GradedAlgebra(G={p.group.name}, |H|={len(p.subgroup)}, "
            f"m={p.size}, dim={self.dim})"
        )


def build_algebra(presentation: Presentation) -> GradedAlgebra:
    return GradedAlgebra(presentation)


class AlgebraElement:
    """Sparse element: map (h, i, j) -> nonzero CycScalar."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedAlgebra, terms: dict[Triple, CycScalar]):
        self.algebra = algebra
        self.terms = {t: c for t, c in terms.items() if c}

    def _check(self, other: "AlgebraElement") -> None:
        if self.algebra is not other.algebra:
            raise AlgebraMismatchError("elements belong to different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out[t] + c if t in out else c
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {t: -c for t, c in self.terms.items()})

    def scale(self, s: CycScalar) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {t: s * c for t, c in self.terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        alg = self.algebra
        N = alg.modulus
        out: dict[Triple, CycScalar] = {}
        for ta, ca in self.terms.items():
            for tb, cb in other.terms.items():
                hit = alg.mul_basis(ta, tb)
                if hit is None:
                    continue
                exp, t = hit
                contrib = (ca * cb).shift_root(exp)
                out[t] = out[t] + contrib if t in out else contrib
        return AlgebraElement(alg, out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.algebra), tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def homogeneous_degree(self) -> Optional[int]:
        """The common degree of all terms, or None if mixed; zero element has
        every degree and reports None as well."""
        degs = {self.algebra.degree[self.algebra.index[t]] for t in self.terms}
        if len(degs) == 1:
            return next(iter(degs))
        return None

    def is_homogeneous_of(self, g: int) -> bool:
        return all(
            self.algebra.degree[self.algebra.index[t]] == g for t in self.terms
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for t in sorted(self.terms):
            bits.append(f"({self.terms[t].pretty()})*u{t[0]}e[{t[1] + 1},{t[2] + 1}]")
        return " + ".join(bits)


# -- moves and normalization -----------------------------------------------------


@dataclass(frozen=True)
class M1:
    """Permute the grading tuple: new[i] = old[sigma[i]]."""

    sigma: tuple[int, ...]


@dataclass(frozen=True)
class M2:
    """Left-multiply tuple entries by subgroup elements: new[i] = hs[i] * old[i]."""

    hs: tuple[int, ...]


@dataclass(frozen=True)
class M3:
    """Conjugate the presentation by g: H -> gHg^-1, entries -> g * old[i]."""

    g: int


Move = M1 | M2 | M3


def apply_move(p: Presentation, move: Move) -> Presentation:
    G = p.group
    if isinstance(move, M1):
        sigma = tuple(move.sigma)
        if sorted(sigma) != list(range(p.size)):
            raise HypothesisError("M1 requires a permutation of tuple positions")
        return Presentation(G, p.subgroup, p.cocycle, tuple(p.grading[s] for s in sigma))
    if isinstance(move, M2):
        hs = tuple(move.hs)
        if len(hs) != p.size:
            raise HypothesisError("M2 needs one subgroup element per tuple entry")
        for h in hs:
            if h not in p.subgroup:
                raise NotSubgroupError(f"M2 element {h} is not in H")
        return Presentation(
            G, p.subgroup, p.cocycle, tuple(G.mul(h, g) for h, g in zip(hs, p.grading))
        )
    if isinstance(move, M3):
        g = move.g
        return Presentation(
            G,
            p.subgroup.conjugate(g),
            p.cocycle.transport(g),
            tuple(G.mul(g, x) for x in p.grading),
        )
    raise TypeError(f"unknown move {move!r}")


def _canonical_rep_tuple(p: Presentation) -> Presentation:
    """M2 that replaces every tuple entry by its canonical right-coset rep."""
    G = p.group
    cosets = p.cosets()
    hs = tuple(G.mul(cosets.rep_of(g), G.inv(g)) for g in p.grading)
    return apply_move(p, M2(hs))


def normalize_presentation(p: Presentation) -> Presentation:
    """Deterministic normalized form: entries are canonical coset reps grouped
    in blocks, block multiplicities nondecreasing, first block rep = identity.
    Realized as one M3, one M2 and one M1, so the algebra is unchanged up to
    graded isomorphism."""
    # Pick the conjugator: representative of a smallest-multiplicity coset.
    mults = {rep: n for rep, n in p.coset_multiplicities().items() if n > 0}
    target = min(mults, key=lambda rep: (mults[rep], rep))
    moved = apply_move(p, M3(p.group.inv(target)))
    moved = _canonical_rep_tuple(moved)
    # Sort positions by (multiplicity, rep); identity rep lands first because
    # its index 0 is minimal among the minimal-multiplicity cosets.
    mults2 = moved.coset_multiplicities()
    order = sorted(range(moved.size), key=lambda i: (mults2[moved.grading[i]], moved.grading[i], i))
    return apply_move(moved, M1(tuple(order)))


def is_normalized(p: Presentation) -> bool:
    q = normalize_presentation(p)
    return q.subgroup == p.subgroup and q.grading == p.grading and q.cocycle == p.cocycle


def presentations_equivalent(p: Presentation, q: Presentation) -> bool:
    """True iff p and q present graded-isomorphic algebras: some conjugation
    of p matches q after normalization, with cohomologous cocycles."""
    if p.group != q.group:
        raise HypothesisError("presentations must share the ambient group")
    if p.size != q.size:
        return False
    nq = normalize_presentation(q)
    for g in p.group.elements():
        np = normalize_presentation(apply_move(p, M3(g)))
        if np.subgroup != nq.subgroup or np.grading != nq.grading:
            continue
        if classes_cohomologous(np.cocycle, nq.cocycle):
            return True
    return False


# -- block structure (normalized view) ----------------------------------------------


@dataclass(frozen=True)
class BlockStructure:
    """Grouping of tuple positions into coset blocks for a grouped tuple.

    reps[b] is the coset representative of block b, positions[b] the tuple
    positions it occupies (consecutive), block_of[i] the block of position i.
    equal_multiplicity is True when all blocks share one size r.
    """

    reps: tuple[int, ...]
    positions: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]
    cosets: CosetDecomposition

    @property
    def k(self) -> int:
        return len(self.reps)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(pos) for pos in self.positions)

    @property
    def equal_multiplicity(self) -> bool:
        return len(set(self.sizes)) == 1

    @property
    def r(self) -> int:
        if not self.equal_multiplicity:
            raise HypothesisError("blocks have unequal multiplicities")
        return len(self.positions[0])

    def block_of_element(self, g: int) -> Optional[int]:
        """Block whose coset contains g, or None when that coset is unrepresented."""
        rep = self.cosets.rep_of(g)
        try:
            return self.reps.index(rep)
        except ValueError:
            return None


def block_structure(p: Presentation) -> BlockStructure:
    """Blocks of a tuple whose entries are grouped canonical coset reps.

    Raises HypothesisError when entries are not canonical reps or equal reps
    are not adjacent (normalize first, or apply a suitable M1).
    """
    cosets = p.cosets()
    for g in p.grading:
        if cosets.rep_of(g) != g:
            raise HypothesisError(
                f"tuple entry {g} is not a canonical coset representative"
            )
    reps: list[int] = []
    positions: list[list[int]] = []
    block_of = []
    for i, g in enumerate(p.grading):
        if reps and reps[-1] == g:
            positions[-1].append(i)
        else:
            if g in reps:
                raise HypothesisError("equal coset reps must occupy adjacent positions")
            reps.append(g)
            positions.append([i])
        block_of.append(len(reps) - 1)
    missing = set(cosets.reps) - set(reps)
    if missing:
        raise HypothesisError(f"cosets {sorted(missing)} are not represented")
    return BlockStructure(
        tuple(reps), tuple(tuple(pos) for pos in positions), tuple(block_of), cosets
    )


# -- crossed product / graded division checks -----------------------------------------


@dataclass(frozen=True)
class CrossedProductResult:
    is_crossed_product: bool
    certificates: dict[int, tuple["AlgebraElement", "AlgebraElement"]] = field(
        default_factory=dict
    )

    def __bool__(self) -> bool:
        return self.is_crossed_product


def is_crossed_product(algebra: GradedAlgebra, verify: bool = True) -> CrossedProductResult:
    """Equal coset multiplicities iff every component holds an invertible
    homogeneous element; when they do, an explicit unit and inverse per degree
    is built and (optionally) verified to multiply to 1 on both sides."""
    p = algebra.presentation
    G = p.group
    cosets = p.cosets()
    mults = p.coset_multiplicities()
    if len(set(mults.values())) != 1:
        return CrossedProductResult(False)
    # Positions per coset, in tuple order.
    pos_by_coset: dict[int, list[int]] = {rep: [] for rep in cosets.reps}
    for i, g in enumerate(p.grading):
        pos_by_coset[cosets.rep_of(g)].append(i)
    one = CycScalar.one(algebra.modulus)
    certificates = {}
    for g in G.elements():
        terms: dict[Triple, CycScalar] = {}
        inv_terms: dict[Triple, CycScalar] = {}
        for rep in cosets.reps:
            src = pos_by_coset[rep]
            dst_rep = cosets.rep_of(G.mul(rep, g))
            dst = pos_by_coset[dst_rep]
            for i, j in zip(src, dst):
                # h with g_i^-1 h g_j = g, i.e. h = g_i g g_j^-1 (in H).
                h = G.mul(G.mul(p.grading[i], g), G.inv(p.grading[j]))
                assert h in p.subgroup
                terms[(h, i, j)] = one
                hinv = G.inv(h)
                inv_terms[(hinv, j, i)] = root_of_unity(
                    algebra.modulus, -p.cocycle.exp(h, hinv)
                )
        unit = algebra.element(terms)
        inv = algebra.element(inv_terms)
        if verify and ((unit * inv != algebra.one()) or (inv * unit != algebra.one())):
            raise AssertionError("crossed-product certificate failed to verify")
        certificates[g] = (unit, inv)
    return CrossedProductResult(True, certificates)


def is_graded_division(algebra: GradedAlgebra) -> bool:
    """Structural test: the algebra is a twisted group algebra (m = 1), whose
    nonzero homogeneous elements are scalar multiples of invertible u_h."""
    return algebra.presentation.size == 1


@dataclass(frozen=True)
class SupportReport:
    support: frozenset[int]
    connected: bool


def support(algebra: GradedAlgebra) -> SupportReport:
    s = algebra.support()
    return SupportReport(s, algebra.is_connected())
