"""Multilinear graded polynomials and the exact identity oracle.

The oracle enumerates homogeneous basis assignments monomial by monomial,
chaining matrix-unit triples (a triple can follow another only when its row
matches the previous column), and accumulates exact scalar contributions in a
table keyed by the assignment.  A polynomial is an identity iff every
accumulated value is zero; the lexicographically first nonzero assignment is
returned as the counterexample.  Polynomials built as products on disjoint
variables carry their factorization, which lets the oracle decide the product
through the factors' evaluation spans instead of walking the concatenated
monomials.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Optional, Sequence

from .algebra import (
    AlgebraElement,
    BlockStructure,
    GradedAlgebra,
    Presentation,
    block_structure,
    build_algebra,
    is_normalized,
)
from .cohomology import is_G_invariant_class
from .errors import (
    DegreeMismatchError,
    HypothesisError,
    NonMultilinearError,
    NotNormalError,
    OrderMismatchError,
)
from .groups import FiniteGroup, Subgroup
from .linalg import Span, span_of, vec_clean
from .scalars import CycScalar, root_of_unity

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class GradedVariable:
    vid: int
    degree: int


@dataclass(frozen=True)
class GradedMonomial:
    coeff: CycScalar
    order: tuple[int, ...]


class GradedPolynomial:
    """A multilinear polynomial over a fixed list of graded variables."""

    __slots__ = ("variables", "monomials", "degree_of", "factors", "renamed")

    def __init__(self, variables, monomials, factors=None, renamed=None):
        vars_t = tuple(variables)
        ids = [v.vid for v in vars_t]
        if len(set(ids)) != len(ids):
            raise NonMultilinearError("duplicate variable ids")
        id_set = frozenset(ids)
        merged: dict[tuple[int, ...], CycScalar] = {}
        order_seen: list[tuple[int, ...]] = []
        for m in monomials:
            coeff, order = (m.coeff, m.order) if isinstance(m, GradedMonomial) else m
            order = tuple(order)
            if frozenset(order) != id_set or len(order) != len(ids):
                raise NonMultilinearError(
                    f"monomial {order} is not a permutation of the variable ids"
                )
            if order in merged:
                merged[order] = merged[order] + coeff
            else:
                merged[order] = coeff
                order_seen.append(order)
        self.variables = vars_t
        self.monomials = tuple(
            GradedMonomial(merged[o], o) for o in order_seen if merged[o]
        )
        self.degree_of = {v.vid: v.degree for v in vars_t}
        self.factors = factors
        self.renamed = dict(renamed) if renamed else {}
        orders = {m.coeff.order for m in self.monomials}
        if len(orders) > 1:
            raise OrderMismatchError("monomial coefficients mix cyclotomic orders")

    @property
    def scalar_order(self) -> Optional[int]:
        return self.monomials[0].coeff.order if self.monomials else None

    @property
    def degree(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.monomials

    def var_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self.degree_of))

    def total_degrees(self, group: FiniteGroup) -> tuple[int, ...]:
        return tuple(
            group.product_seq(self.degree_of[v] for v in m.order) for m in self.monomials
        )

    def homogeneous_degree(self, group: FiniteGroup) -> Optional[int]:
        degs = set(self.total_degrees(group))
        return degs.pop() if len(degs) == 1 else None

    def scale(self, s: CycScalar) -> "GradedPolynomial":
        return GradedPolynomial(
            self.variables, [(s * m.coeff, m.order) for m in self.monomials]
        )

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial(
            self.variables, [(-m.coeff, m.order) for m in self.monomials]
        )

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        if self.degree_of != other.degree_of:
            raise NonMultilinearError("polynomial sum requires identical variable lists")
        return GradedPolynomial(
            self.variables,
            [(m.coeff, m.order) for m in self.monomials]
            + [(m.coeff, m.order) for m in other.monomials],
        )

    def __sub__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return (
            sorted(self.variables, key=lambda v: v.vid)
            == sorted(other.variables, key=lambda v: v.vid)
            and sorted(self.monomials, key=lambda m: m.order)
            == sorted(other.monomials, key=lambda m: m.order)
        )

    def __hash__(self):
        return hash(
            (
                tuple(sorted(self.variables, key=lambda v: v.vid)),
                tuple(sorted(self.monomials, key=lambda m: m.order)),
            )
        )

    def __repr__(self) -> str:
        if not self.monomials:
            return "GradedPolynomial(0)"
        bits = [
            f"({m.coeff.pretty()})*" + "".join(f"x{v}" for v in m.order)
            for m in self.monomials
        ]
        return "GradedPolynomial(" + " + ".join(bits) + ")"


def variables_for(degrees: Sequence[int], start_id: int = 1) -> tuple[GradedVariable, ...]:
    return tuple(GradedVariable(start_id + i, d) for i, d in enumerate(degrees))


def monomial_polynomial(
    variables: Sequence[GradedVariable], coeff: CycScalar, order: Optional[Sequence[int]] = None
) -> GradedPolynomial:
    order = tuple(order) if order is not None else tuple(v.vid for v in variables)
    return GradedPolynomial(variables, [(coeff, order)])


def disjoint_product(f: GradedPolynomial, g: GradedPolynomial) -> GradedPolynomial:
    """Concatenation product; overlapping ids on g are renamed to fresh ones
    (the renaming is reported on the result)."""
    renamed: dict[int, int] = {}
    overlap = set(f.degree_of) & set(g.degree_of)
    if overlap:
        nxt = max(list(f.degree_of) + list(g.degree_of)) + 1
        for vid in sorted(g.degree_of):
            if vid in overlap:
                renamed[vid] = nxt
                nxt += 1
        g = GradedPolynomial(
            [GradedVariable(renamed.get(v.vid, v.vid), v.degree) for v in g.variables],
            [
                (m.coeff, tuple(renamed.get(v, v) for v in m.order))
                for m in g.monomials
            ],
        )
    monos = [
        (mf.coeff * mg.coeff, mf.order + mg.order)
        for mf in f.monomials
        for mg in g.monomials
    ]
    return GradedPolynomial(
        f.variables + g.variables, monos, factors=(f, g), renamed=renamed
    )


def _parity(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternate(f: GradedPolynomial, var_ids: Sequence[int]) -> GradedPolynomial:
    """Signed alternation of a single monomial over variables of one degree."""
    if len(f.monomials) != 1:
        raise NonMultilinearError("alternation expects a single-monomial polynomial")
    xs = sorted(var_ids)
    degs = {f.degree_of[v] for v in xs}
    if len(degs) > 1:
        raise DegreeMismatchError("alternated variables must share one degree")
    base = f.monomials[0]
    positions = [i for i, v in enumerate(base.order) if v in set(xs)]
    if len(positions) != len(xs):
        raise NonMultilinearError("alternation set must be variables of the monomial")
    monos = []
    for perm in permutations(range(len(xs))):
        order = list(base.order)
        for slot, p in enumerate(perm):
            order[positions[slot]] = xs[p]
        sign = _parity(perm)
        coeff = base.coeff if sign == 1 else -base.coeff
        monos.append((coeff, tuple(order)))
    return GradedPolynomial(f.variables, monos)


# -- evaluation ---------------------------------------------------------------


def evaluate(
    f: GradedPolynomial, algebra: GradedAlgebra, assignment: dict[int, AlgebraElement]
) -> AlgebraElement:
    """Sum over monomials of coeff times the ordered product of the images."""
    _check_scalar_order(f, algebra)
    for v in f.variables:
        if v.vid not in assignment:
            raise DegreeMismatchError(f"variable x{v.vid} is unassigned")
        el = assignment[v.vid]
        if el.algebra is not algebra:
            raise DegreeMismatchError(f"assignment of x{v.vid} lives in another algebra")
        if not el.is_homogeneous_of(v.degree):
            raise DegreeMismatchError(
                f"assignment of x{v.vid} is not homogeneous of degree {v.degree}"
            )
    total = algebra.zero()
    for m in f.monomials:
        acc = None
        for vid in m.order:
            acc = assignment[vid] if acc is None else acc * assignment[vid]
        total = total + acc.scale(m.coeff)
    return total


def assignment_elements(
    algebra: GradedAlgebra, triples: dict[int, Triple]
) -> dict[int, AlgebraElement]:
    one = CycScalar.one(algebra.modulus)
    return {vid: algebra.element({t: one}) for vid, t in triples.items()}


# -- the oracle ----------------------------------------------------------------


@dataclass
class IdentityReport:
    identity: bool
    counterexample: Optional[dict[int, Triple]] = None
    value: Optional[dict[Triple, CycScalar]] = None


def _check_scalar_order(f: GradedPolynomial, algebra: GradedAlgebra) -> None:
    if f.scalar_order is not None and f.scalar_order != algebra.modulus:
        raise OrderMismatchError(
            f"polynomial coefficients live in Q(zeta_{f.scalar_order}) "
            f"but the algebra uses order {algebra.modulus}"
        )


def _monomial_accumulate(
    poly: GradedPolynomial,
    algebra: GradedAlgebra,
    mono: GradedMonomial,
    slot: dict[int, int],
    acc: dict,
    allowed_rows: Optional[dict[int, frozenset[int]]] = None,
) -> None:
    """Add one monomial's chained-path contributions into acc."""
    order = mono.order
    n = len(order)
    degs = [poly.degree_of[v] for v in order]
    basis = algebra.basis
    exp_of = algebra._exp
    mul = algebra.group.mul
    by_row = algebra.basis_by_degree_and_row
    coeff = mono.coeff
    slots_by_pos = [slot[v] for v in order]
    nvars = len(slot)

    def rec(pos: int, col: int, hprod: int, expsum: int, key: list) -> None:
        if pos == n:
            tkey = tuple(key)
            row0 = basis[key[slots_by_pos[0]]][1]
            value = (hprod, row0, col)
            scalar = coeff.shift_root(expsum)
            bucket = acc.get(tkey)
            if bucket is None:
                acc[tkey] = {value: scalar}
            else:
                prev = bucket.get(value)
                bucket[value] = scalar if prev is None else prev + scalar
        else:
            restrict = allowed_rows.get(order[pos]) if allowed_rows else None
            for k in by_row(degs[pos], col):
                t = basis[k]
                if restrict is not None and t[1] not in restrict:
                    continue
                key[slots_by_pos[pos]] = k
                rec(pos + 1, t[2], mul(hprod, t[0]), expsum + exp_of(hprod, t[0]), key)

    first = algebra.homogeneous_basis(degs[0])
    restrict0 = allowed_rows.get(order[0]) if allowed_rows else None
    for k in first:
        t = basis[k]
        if restrict0 is not None and t[1] not in restrict0:
            continue
        key = [-1] * nvars
        key[slots_by_pos[0]] = k
        rec(1, t[2], t[0], 0, key)


def accumulate_evaluations(
    poly: GradedPolynomial,
    algebra: GradedAlgebra,
    allowed_rows: Optional[dict[int, frozenset[int]]] = None,
    threads: int = 1,
) -> dict[tuple, dict[Triple, CycScalar]]:
    """Assignment table: basis-index tuple (variables in sorted id order) ->
    accumulated value as a sparse triple -> scalar map."""
    _check_scalar_order(poly, algebra)
    vids = poly.var_ids()
    slot = {vid: i for i, vid in enumerate(vids)}
    if threads <= 1 or len(poly.monomials) <= 1:
        acc: dict = {}
        for mono in poly.monomials:
            _monomial_accumulate(poly, algebra, mono, slot, acc, allowed_rows)
        return acc
    # Deterministic parallel merge: worker w takes every w-th monomial and the
    # partial tables are merged in worker order.
    partials: list[dict] = []

    def work(monos):
        local: dict = {}
        for mono in monos:
            _monomial_accumulate(poly, algebra, mono, slot, local, allowed_rows)
        return local

    chunks = [poly.monomials[w::threads] for w in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        partials = list(pool.map(work, chunks))
    acc = partials[0] if partials else {}
    for part in partials[1:]:
        for key, bucket in part.items():
            dst = acc.get(key)
            if dst is None:
                acc[key] = bucket
            else:
                for t, s in bucket.items():
                    dst[t] = dst[t] + s if t in dst else s
    return acc


def check_identity(
    f: GradedPolynomial, algebra: GradedAlgebra, threads: int = 1
) -> IdentityReport:
    """Exhaustive multilinear identity test over homogeneous basis assignments.

    Products built by disjoint_product are decided through the factors'
    evaluation spans: a product on disjoint variables is an identity iff every
    product of span vectors vanishes, so the concatenated monomials are never
    walked."""
    _check_scalar_order(f, algebra)
    if f.factors is not None:
        return _check_identity_factored(f, algebra, threads)
    acc = accumulate_evaluations(f, algebra, threads=threads)
    for key in sorted(acc):
        value = vec_clean(acc[key])
        if value:
            vids = f.var_ids()
            assign = {vid: algebra.basis[key[i]] for i, vid in enumerate(vids)}
            return IdentityReport(False, assign, value)
    return IdentityReport(True)


def is_identity(f: GradedPolynomial, algebra: GradedAlgebra, threads: int = 1) -> bool:
    return check_identity(f, algebra, threads=threads).identity


def _product_vectors(algebra: GradedAlgebra, u: dict, v: dict) -> dict:
    out: dict = {}
    for ta, ca in u.items():
        for tb, cb in v.items():
            hit = algebra.mul_basis(ta, tb)
            if hit is None:
                continue
            exp, t = hit
            contrib = (ca * cb).shift_root(exp)
            out[t] = out[t] + contrib if t in out else contrib
    return vec_clean(out)


def evaluation_span(f: GradedPolynomial, algebra: GradedAlgebra, threads: int = 1) -> Span:
    """Reduced span of all values of f on homogeneous basis assignments."""
    if f.factors is not None:
        left, right = f.factors
        s1 = evaluation_span(left, algebra, threads)
        s2 = evaluation_span(right, algebra, threads)
        return span_of(
            _product_vectors(algebra, u, v) for u in s1.basis() for v in s2.basis()
        )
    acc = accumulate_evaluations(f, algebra, threads=threads)
    return span_of(vec_clean(acc[key]) for key in sorted(acc))


def _check_identity_factored(
    f: GradedPolynomial, algebra: GradedAlgebra, threads: int
) -> IdentityReport:
    left, right = f.factors
    s1 = evaluation_span(left, algebra, threads)
    s2 = evaluation_span(right, algebra, threads)
    for u in s1.basis():
        for v in s2.basis():
            if _product_vectors(algebra, u, v):
                assign, value = _factored_counterexample(f, algebra)
                return IdentityReport(False, assign, value)
    return IdentityReport(True)


def _value_pairs(
    f: GradedPolynomial, algebra: GradedAlgebra
) -> Iterator[tuple[dict[int, Triple], dict]]:
    """Lazy (assignment, nonzero value) stream in deterministic order."""
    if f.factors is not None:
        left, right = f.factors
        for a1, v1 in _value_pairs(left, algebra):
            for a2, v2 in _value_pairs(right, algebra):
                prod = _product_vectors(algebra, v1, v2)
                if prod:
                    merged = dict(a1)
                    merged.update(a2)
                    yield merged, prod
        return
    acc = accumulate_evaluations(f, algebra)
    vids = f.var_ids()
    for key in sorted(acc):
        value = vec_clean(acc[key])
        if value:
            yield {vid: algebra.basis[key[i]] for i, vid in enumerate(vids)}, value


def _factored_counterexample(f: GradedPolynomial, algebra: GradedAlgebra):
    for assign, value in _value_pairs(f, algebra):
        return assign, value
    raise AssertionError("factored counterexample requested for an identity")


# -- good permutations, pure polynomials -----------------------------------------


def _prefix_cosets(
    order: Sequence[int], degree_of: dict[int, int], group: FiniteGroup, cosets
) -> dict[int, int]:
    """Map vid -> coset index of the product of degrees up to and including it."""
    out = {}
    prefix = 0
    for vid in order:
        prefix = group.mul(prefix, degree_of[vid])
        out[vid] = cosets.coset_of[prefix]
    return out


def monomial_signature(
    order: Sequence[int], degree_of: dict[int, int], group: FiniteGroup, cosets
) -> tuple:
    total = group.product_seq(degree_of[v] for v in order)
    pc = _prefix_cosets(order, degree_of, group, cosets)
    return (total,) + tuple(pc[v] for v in sorted(pc))


def is_good_permutation(
    f: GradedPolynomial, order_a: Sequence[int], order_b: Sequence[int], H: Subgroup
) -> bool:
    """True iff the two monomial orders have equal total degree and matching
    right-H-coset prefix products at every variable."""
    group = H.parent
    cosets = H.right_cosets()
    if frozenset(order_a) != frozenset(order_b):
        return False
    return monomial_signature(order_a, f.degree_of, group, cosets) == monomial_signature(
        order_b, f.degree_of, group, cosets
    )


def pure_components(f: GradedPolynomial, H: Subgroup) -> list[GradedPolynomial]:
    """Partition of the monomials into good-permutation classes (an equivalence
    relation: classes are exactly the signature fibers)."""
    group = H.parent
    cosets = H.right_cosets()
    buckets: dict[tuple, list[GradedMonomial]] = {}
    for m in f.monomials:
        sig = monomial_signature(m.order, f.degree_of, group, cosets)
        buckets.setdefault(sig, []).append(m)
    return [
        GradedPolynomial(f.variables, buckets[sig]) for sig in sorted(buckets)
    ]


def is_pure(f: GradedPolynomial, H: Subgroup) -> bool:
    return len(pure_components(f, H)) <= 1


def good_permutations_of(
    degrees: Sequence[int], H: Subgroup, limit: Optional[int] = None
) -> Iterator[tuple[int, ...]]:
    """All sigma with Z_sigma a good permutation of Z (identity included),
    generated by a prefix-coset DFS in lexicographic order."""
    group = H.parent
    cosets = H.right_cosets()
    n = len(degrees)
    entering = []
    after = []
    prefix = 0
    for t in degrees:
        entering.append(cosets.coset_of[prefix])
        prefix = group.mul(prefix, t)
        after.append(cosets.coset_of[prefix])
    total = prefix
    found = 0
    used = [False] * n
    sigma: list[int] = []

    def rec(current: int, prod: int) -> Iterator[tuple[int, ...]]:
        nonlocal found
        if limit is not None and found >= limit:
            return
        if len(sigma) == n:
            if prod == total:
                found += 1
                yield tuple(sigma)
            return
        for p in range(n):
            if used[p] or entering[p] != current:
                continue
            used[p] = True
            sigma.append(p)
            yield from rec(after[p], group.mul(prod, degrees[p]))
            sigma.pop()
            used[p] = False

    yield from rec(cosets.coset_of[0], 0)


def good_binomial(
    degrees: Sequence[int], sigma: Sequence[int], scalar: CycScalar, start_id: int = 1
) -> GradedPolynomial:
    """Z - scalar * Z_sigma on fresh variables with the given degrees."""
    variables = variables_for(degrees, start_id)
    base = tuple(v.vid for v in variables)
    permuted = tuple(variables[s].vid for s in sigma)
    one = CycScalar.one(scalar.order)
    return GradedPolynomial(variables, [(one, base), (-scalar, permuted)])


class GoodScalarContext:
    """Validated context for the good-permutation scalar of one presentation.

    Hypotheses (normal H, equal block multiplicities, normalized tuple,
    G-invariant class) are checked once; scalar() is then cheap enough for
    exhaustive sweeps.
    """

    def __init__(self, presentation: Presentation):
        H = presentation.subgroup
        if not H.is_normal():
            raise NotNormalError("good-permutation scalar needs H normal")
        if not is_normalized(presentation):
            raise HypothesisError("presentation must be in normalized form")
        bs = block_structure(presentation)
        if not bs.equal_multiplicity:
            raise HypothesisError("good-permutation scalar needs equal multiplicities")
        if not is_G_invariant_class(presentation.cocycle):
            raise HypothesisError("cohomology class is not G-invariant")
        self.presentation = presentation
        self.group = presentation.group
        self.H = H
        self.cosets = H.right_cosets()
        self.cocycle = presentation.cocycle

    def transversal_walk(self, degrees: Sequence[int]) -> list[int]:
        """The H-elements f_i = [t_1...t_(i-1)] t_i [t_1...t_i]^-1."""
        G = self.group
        rep = 0
        out = []
        for t in degrees:
            nxt = self.cosets.rep_of(G.mul(rep, t))
            f = G.mul(G.mul(rep, t), G.inv(nxt))
            out.append(f)
            rep = nxt
        return out

    def scalar_exp(self, degrees: Sequence[int], sigma: Sequence[int]) -> int:
        fs = self.transversal_walk(degrees)
        permuted = [fs[s] for s in sigma]
        c = self.cocycle
        return (c.product_exp(fs) - c.product_exp(permuted)) % c.modulus

    def scalar(self, degrees: Sequence[int], sigma: Sequence[int]) -> CycScalar:
        return root_of_unity(self.cocycle.modulus, self.scalar_exp(degrees, sigma))


def good_permutation_scalar(
    degrees: Sequence[int], sigma: Sequence[int], presentation: Presentation
) -> CycScalar:
    """The scalar s with Z - s * Z_sigma a graded identity of the presented
    algebra, for sigma a good permutation of the degree word."""
    ctx = GoodScalarContext(presentation)
    if tuple(sigma) not in set(
        good_permutations_of(degrees, presentation.subgroup)
    ):
        raise HypothesisError("sigma is not a good permutation of the degree word")
    return ctx.scalar(degrees, sigma)


# -- path machinery ------------------------------------------------------------


@dataclass
class PathReport:
    vanishing: tuple[bool, ...]
    holds: bool


def _first_variable(f: GradedPolynomial) -> int:
    if not f.monomials:
        raise HypothesisError("zero polynomial has no leading monomial")
    return f.monomials[0].order[0]


def _path_rows(
    f: GradedPolynomial, algebra: GradedAlgebra, start_block: int, bs: BlockStructure
) -> dict[int, frozenset[int]]:
    lead = _first_variable(f)
    return {lead: frozenset(bs.positions[start_block])}


def path_vanishes(
    f: GradedPolynomial, algebra: GradedAlgebra, start_block: int
) -> bool:
    """True iff f vanishes on all basis evaluations whose leading variable is
    rooted in the given e-block row range."""
    bs = _path_block_structure(f, algebra)
    allowed = _path_rows(f, algebra, start_block, bs)
    acc = accumulate_evaluations(f, algebra, allowed_rows=allowed)
    return all(not vec_clean(v) for v in acc.values())


def _path_block_structure(f: GradedPolynomial, algebra: GradedAlgebra) -> BlockStructure:
    p = algebra.presentation
    if not p.subgroup.is_normal():
        raise NotNormalError("path machinery requires H normal")
    bs = block_structure(p)
    if not is_pure(f, p.subgroup):
        raise HypothesisError("path machinery expects a pure polynomial")
    return bs


def satisfies_path_property(
    f: GradedPolynomial, algebra: GradedAlgebra
) -> PathReport:
    """Vanishing pattern over all starting blocks; the property holds when the
    polynomial vanishes on every path or on none."""
    bs = _path_block_structure(f, algebra)
    pattern = tuple(path_vanishes(f, algebra, b) for b in range(bs.k))
    return PathReport(pattern, all(pattern) or not any(pattern))


@dataclass
class PathRestriction:
    """The ungraded multilinear polynomial carried by one evaluation path."""

    start_block: int
    end_block: int
    r: int
    terms: tuple[tuple[CycScalar, tuple[int, ...]], ...]  # (gamma * coeff, order)

    def is_identity_of_matrices(self) -> bool:
        if not self.terms:
            return True
        if self.r == 1:
            total = None
            for c, _ in self.terms:
                total = c if total is None else total + c
            return not total
        algebra = _matrix_algebra(self.r, self.terms[0][0].order)
        ids = sorted({v for _, order in self.terms for v in order})
        variables = tuple(GradedVariable(vid, 0) for vid in ids)
        poly = GradedPolynomial(variables, list(self.terms))
        return check_identity(poly, algebra).identity


_MATRIX_ALGEBRAS: dict[tuple[int, int], GradedAlgebra] = {}


def _matrix_algebra(r: int, modulus: int) -> GradedAlgebra:
    key = (r, modulus)
    if key not in _MATRIX_ALGEBRAS:
        from .cohomology import Cocycle2

        trivial = FiniteGroup.cyclic(1)
        sub = trivial.full_subgroup()
        pres = Presentation(trivial, sub, Cocycle2.trivial(sub, modulus), (0,) * r)
        _MATRIX_ALGEBRAS[key] = build_algebra(pres)
    return _MATRIX_ALGEBRAS[key]


def path_restriction(
    f: GradedPolynomial, algebra: GradedAlgebra, start_block: int
) -> PathRestriction:
    """Follow the forced block walk from start_block through every monomial,
    collecting the twisted-group-algebra scalar; requires equal block
    multiplicities so the result lives over one matrix size."""
    bs = _path_block_structure(f, algebra)
    if not bs.equal_multiplicity:
        raise HypothesisError("path restriction requires equal block multiplicities")
    p = algebra.presentation
    G = p.group
    c = p.cocycle
    end = None
    terms = []
    for m in f.monomials:
        b = start_block
        hs = []
        for vid in m.order:
            t = f.degree_of[vid]
            nxt = bs.block_of_element(G.mul(bs.reps[b], t))
            h = G.mul(G.mul(bs.reps[b], t), G.inv(bs.reps[nxt]))
            hs.append(h)
            b = nxt
        if end is None:
            end = b
        elif end != b:
            raise HypothesisError("monomials of a pure polynomial must share end blocks")
        gamma = root_of_unity(c.modulus, c.product_exp(hs))
        terms.append((gamma * m.coeff, m.order))
    return PathRestriction(start_block, end if end is not None else start_block, bs.r, tuple(terms))
