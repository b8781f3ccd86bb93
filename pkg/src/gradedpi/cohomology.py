"""2-cocycles on a finite subgroup with root-of-unity values.

A cocycle stores exponents mod N: c(a, b) = zeta_N^exps[a][b], indexed by the
subgroup's local element order.  Coboundary membership is decided exactly by
diagonalizing the integer relation matrix (Smith-style row/column operations)
and solving the diagonal congruences mod N, which handles composite N
uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import gcd
from typing import Iterator, Optional, Sequence

from .errors import BinomialConditionError, CocycleError, NotNormalError
from .groups import FiniteGroup, Subgroup
from .scalars import CycScalar, root_of_unity


@dataclass(frozen=True)
class CocycleViolation:
    """Names a failing triple (or normalization element) of a cocycle table."""

    kind: str  # "identity" or "normalization"
    triple: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} violation at {self.triple}: {self.detail}"


class Cocycle2:
    """Exponent table of a normalized 2-cocycle on H with values zeta_N^k."""

    __slots__ = ("subgroup", "modulus", "exps")

    def __init__(self, subgroup: Subgroup, modulus: int, exps):
        if modulus < 1:
            raise CocycleError("modulus must be a positive integer")
        n = len(subgroup)
        rows = tuple(tuple(int(v) % modulus for v in row) for row in exps)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise CocycleError(f"exponent table must be {n}x{n}")
        self.subgroup = subgroup
        self.modulus = modulus
        self.exps = rows

    @classmethod
    def trivial(cls, subgroup: Subgroup, modulus: int = 1) -> "Cocycle2":
        n = len(subgroup)
        return cls(subgroup, modulus, [[0] * n for _ in range(n)])

    @classmethod
    def from_coboundary(cls, cob: "Coboundary") -> "Cocycle2":
        return cob.induced()

    # -- lookup ----------------------------------------------------------------

    def exp(self, a: int, b: int) -> int:
        """Exponent of c(a, b) for parent-group elements a, b of H."""
        H = self.subgroup
        return self.exps[H.local_index(a)][H.local_index(b)]

    def value(self, a: int, b: int) -> CycScalar:
        return root_of_unity(self.modulus, self.exp(a, b))

    # -- validation ------------------------------------------------------------

    def violations(self) -> list[CocycleViolation]:
        """Empty list iff the table is a normalized 2-cocycle."""
        H = self.subgroup
        g = H.parent
        N = self.modulus
        out = []
        e_local = H.local_index(0)
        for i, h in enumerate(H.members):
            if self.exps[e_local][i] % N != 0:
                out.append(CocycleViolation("normalization", (0, h), "c(e, h) != 1"))
            if self.exps[i][e_local] % N != 0:
                out.append(CocycleViolation("normalization", (h, 0), "c(h, e) != 1"))
        for a in H.members:
            for b in H.members:
                ab = g.mul(a, b)
                for d in H.members:
                    lhs = self.exp(a, b) + self.exp(ab, d)
                    rhs = self.exp(a, g.mul(b, d)) + self.exp(b, d)
                    if (lhs - rhs) % N != 0:
                        out.append(
                            CocycleViolation(
                                "identity",
                                (a, b, d),
                                f"c(a,b)c(ab,d) != c(a,bd)c(b,d) (exponents {lhs} vs {rhs})",
                            )
                        )
        return out

    def require_valid(self) -> "Cocycle2":
        bad = self.violations()
        if bad:
            raise CocycleError(str(bad[0]))
        return self

    # -- rescaling and comparison ------------------------------------------------

    def with_modulus(self, new_modulus: int) -> "Cocycle2":
        """Reinterpret values zeta_N^k as zeta_M^(kM/N); N must divide M."""
        if new_modulus % self.modulus != 0:
            raise CocycleError("new modulus must be a multiple of the old one")
        f = new_modulus // self.modulus
        return Cocycle2(
            self.subgroup, new_modulus, [[v * f for v in row] for row in self.exps]
        )

    def quotient_exps(self, other: "Cocycle2") -> "Cocycle2":
        """The cocycle c/other (difference of exponent tables)."""
        if self.subgroup != other.subgroup or self.modulus != other.modulus:
            raise CocycleError("quotient requires the same subgroup and modulus")
        n = len(self.subgroup)
        return Cocycle2(
            self.subgroup,
            self.modulus,
            [
                [(self.exps[i][j] - other.exps[i][j]) % self.modulus for j in range(n)]
                for i in range(n)
            ],
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cocycle2)
            and self.subgroup == other.subgroup
            and self.modulus == other.modulus
            and self.exps == other.exps
        )

    def __hash__(self) -> int:
        return hash((self.subgroup, self.modulus, self.exps))

    def __repr__(self) -> str:
        return f"Cocycle2(|H|={len(self.subgroup)}, N={self.modulus})"

    # -- the G-action -----------------------------------------------------------

    def conjugate(self, g: int) -> "Cocycle2":
        """(g . c)(h1, h2) = c(g h1 g^-1, g h2 g^-1) on the same subgroup."""
        H = self.subgroup
        grp = H.parent
        conj = {}
        for h in H.members:
            x = grp.conj(g, h)
            if x not in H.member_set:
                raise NotNormalError(f"conjugation by {g} maps {h} outside H")
            conj[h] = x
        n = len(H)
        mem = H.members
        return Cocycle2(
            H,
            self.modulus,
            [[self.exp(conj[mem[i]], conj[mem[j]]) for j in range(n)] for i in range(n)],
        )

    def transport(self, g: int) -> "Cocycle2":
        """Move the cocycle to the conjugate subgroup gHg^-1 (the M3 transport):
        c'(g h1 g^-1, g h2 g^-1) = c(h1, h2)."""
        H = self.subgroup
        grp = H.parent
        new_sub = H.conjugate(g)
        gi = grp.inv(g)
        mem = new_sub.members
        n = len(mem)
        return Cocycle2(
            new_sub,
            self.modulus,
            [
                [self.exp(grp.conj(gi, mem[i]), grp.conj(gi, mem[j])) for j in range(n)]
                for i in range(n)
            ],
        )

    # -- folds and binomials -------------------------------------------------------

    def product_exp(self, hs: Sequence[int]) -> int:
        """Exponent of c(h1,...,hn) defined by u_h1 ... u_hn = c(hs) u_(h1...hn):
        left fold accumulating exps[prefix][next]."""
        g = self.subgroup.parent
        total = 0
        prefix = 0
        for h in hs:
            total += self.exp(prefix, h)
            prefix = g.mul(prefix, h)
        return total % self.modulus

    def binomial_alpha_exp(self, hs: Sequence[int], sigma: Sequence[int]) -> int:
        """Exponent of alpha_(hs, sigma) = c(hs)/c(hs_sigma); requires the two
        orders to have equal products in H."""
        g = self.subgroup.parent
        hs = tuple(hs)
        permuted = tuple(hs[s] for s in sigma)
        if g.product_seq(hs) != g.product_seq(permuted):
            raise BinomialConditionError(
                f"products differ for hs={hs}, sigma={tuple(sigma)}"
            )
        return (self.product_exp(hs) - self.product_exp(permuted)) % self.modulus

    def binomial_alpha(self, hs: Sequence[int], sigma: Sequence[int]) -> CycScalar:
        return root_of_unity(self.modulus, self.binomial_alpha_exp(hs, sigma))


@dataclass(frozen=True)
class Coboundary:
    """A map lambda: H -> Z/N witnessing c = d(lambda)."""

    subgroup: Subgroup
    modulus: int
    lam: tuple[int, ...]  # indexed by local element order

    def induced(self) -> Cocycle2:
        H = self.subgroup
        g = H.parent
        n = len(H)
        mem = H.members

        def d(i, j):
            ij = H.local_index(g.mul(mem[i], mem[j]))
            return (self.lam[i] + self.lam[j] - self.lam[ij]) % self.modulus

        return Cocycle2(H, self.modulus, [[d(i, j) for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class CoboundaryObstruction:
    """Why the congruence system d(lambda) = c has no solution mod N."""

    row: int
    divisor: int
    residue: int

    def __str__(self) -> str:
        return (
            f"diagonalized congruence row {self.row}: "
            f"{self.divisor} does not divide residue {self.residue}"
        )


# -- integer linear algebra ---------------------------------------------------


def smith_diagonalize(matrix: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (D, U, V) with U * matrix * V = D and D nonzero only on the
    diagonal.  Divisibility chaining of the classical Smith form is not
    enforced; it is not needed to solve diagonal congruences.
    """
    D = [list(row) for row in matrix]
    m = len(D)
    n = len(D[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_combine(i1, i2, a, b, c, d):
        # (row i1, row i2) <- (a*row i1 + b*row i2, c*row i1 + d*row i2)
        for M in (D, U):
            r1, r2 = M[i1], M[i2]
            for k in range(len(r1)):
                r1[k], r2[k] = a * r1[k] + b * r2[k], c * r1[k] + d * r2[k]

    def col_combine(j1, j2, a, b, c, d):
        for M in (D, V):
            for row in M:
                row[j1], row[j2] = a * row[j1] + b * row[j2], c * row[j1] + d * row[j2]

    for t in range(min(m, n)):
        # Find a pivot.
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            row_combine(t, pi, 0, 1, 1, 0)
        if pj != t:
            col_combine(t, pj, 0, 1, 1, 0)
        # Clear row and column t; gcd steps may reintroduce entries, iterate.
        while True:
            dirty = False
            for i in range(t + 1, m):
                if D[i][t] != 0:
                    a, b = D[t][t], D[i][t]
                    if b % a == 0:
                        q = b // a
                        row_combine(t, i, 1, 0, -q, 1)
                    else:
                        x, y, g = _xgcd(a, b)
                        row_combine(t, i, x, y, -(b // g), a // g)
                    dirty = True
            for j in range(t + 1, n):
                if D[t][j] != 0:
                    a, b = D[t][t], D[t][j]
                    if b % a == 0:
                        q = b // a
                        col_combine(t, j, 1, 0, -q, 1)
                    else:
                        x, y, g = _xgcd(a, b)
                        col_combine(t, j, x, y, -(b // g), a // g)
                    dirty = True
            if not dirty:
                break
    return D, U, V


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return x0, y0, a


def solve_congruences(
    matrix: Sequence[Sequence[int]], rhs: Sequence[int], modulus: int
) -> tuple[Optional[list[int]], Optional[CoboundaryObstruction]]:
    """Solve M x = rhs (mod modulus) over the integers; returns (solution, None)
    or (None, obstruction)."""
    D, U, V = smith_diagonalize(matrix)
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    c = [sum(U[i][k] * rhs[k] for k in range(m)) % modulus for i in range(m)]
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d == 0:
            if c[i] % modulus != 0:
                return None, CoboundaryObstruction(i, modulus, c[i] % modulus)
            continue
        g = gcd(d, modulus)
        if c[i] % g != 0:
            return None, CoboundaryObstruction(i, g, c[i] % g)
        dd, mm, cc = d // g, modulus // g, c[i] // g
        inv = _xgcd(dd, mm)[0] % mm if mm > 1 else 0
        y[i] = (cc * inv) % modulus if mm > 1 else 0
    x = [sum(V[i][k] * y[k] for k in range(n)) % modulus for i in range(n)]
    return x, None


# -- coboundary decision ----------------------------------------------------------


def _relation_system(c: Cocycle2) -> tuple[list[list[int]], list[int]]:
    H = c.subgroup
    g = H.parent
    n = len(H)
    mem = H.members
    rows = []
    rhs = []
    for i in range(n):
        for j in range(n):
            row = [0] * n
            row[i] += 1
            row[j] += 1
            row[H.local_index(g.mul(mem[i], mem[j]))] -= 1
            rows.append(row)
            rhs.append(c.exps[i][j])
    return rows, rhs


def is_coboundary(c: Cocycle2) -> Optional[Coboundary]:
    """A witness lambda with d(lambda) = c when one exists, else None."""
    wit, _ = coboundary_or_obstruction(c)
    return wit


def coboundary_or_obstruction(
    c: Cocycle2,
) -> tuple[Optional[Coboundary], Optional[CoboundaryObstruction]]:
    rows, rhs = _relation_system(c)
    sol, obstruction = solve_congruences(rows, rhs, c.modulus)
    if sol is None:
        return None, obstruction
    wit = Coboundary(c.subgroup, c.modulus, tuple(sol))
    assert wit.induced() == c, "congruence solver returned a bad witness"
    return wit, None


def validate_cocycle(c: Cocycle2) -> list[CocycleViolation]:
    """Module-level form of Cocycle2.violations (ok == empty list)."""
    return c.violations()


def subgroup_exponent(H: Subgroup) -> int:
    out = 1
    for h in H.members:
        o = H.parent.element_order(h)
        out = out * o // gcd(out, o)
    return out


def class_modulus(c: Cocycle2) -> int:
    """Root order sufficient to witness triviality of [c] in H^2(H, F*).

    If a mu_N-valued cocycle equals d(lambda) for some lambda: H -> F*, then
    lambda^N is a character of H, so lambda takes values in the
    (N * exp(H))-th roots of unity.  Deciding class triviality therefore only
    needs the congruence solve at that lifted modulus.
    """
    return c.modulus * subgroup_exponent(c.subgroup)


def is_trivial_class(c: Cocycle2) -> bool:
    """True iff [c] = 1 in H^2(H, F*) (not merely modulo mu_N-coboundaries)."""
    lifted = c.with_modulus(class_modulus(c))
    return is_coboundary(lifted) is not None


def trivial_class_obstruction(
    c: Cocycle2,
) -> tuple[Optional[Coboundary], Optional[CoboundaryObstruction]]:
    lifted = c.with_modulus(class_modulus(c))
    return coboundary_or_obstruction(lifted)


def classes_cohomologous(c1: Cocycle2, c2: Cocycle2) -> bool:
    """Whether two cocycles on the same subgroup define one class in H^2(H, F*)."""
    if c1.subgroup != c2.subgroup:
        raise CocycleError("cocycles live on different subgroups")
    n = c1.modulus * c2.modulus // gcd(c1.modulus, c2.modulus)
    return is_trivial_class(c1.with_modulus(n).quotient_exps(c2.with_modulus(n)))


def conjugate_cocycle(c: Cocycle2, g: int) -> Cocycle2:
    return c.conjugate(g)


def cocycle_product_scalar(c: Cocycle2, hs: Sequence[int]) -> int:
    return c.product_exp(hs)


def binomial_alpha(c: Cocycle2, hs: Sequence[int], sigma: Sequence[int]) -> CycScalar:
    return c.binomial_alpha(hs, sigma)


def is_G_invariant_class(c: Cocycle2, group: FiniteGroup | None = None) -> bool:
    """True iff [g.c] = [c] in H^2(H, F*) for every right-coset representative.

    The quotient (g.c)/c is tested for class triviality at the lifted modulus
    (see class_modulus), so invariance is decided in H^2(H, F*) and not merely
    modulo mu_N-valued coboundaries.  Requires H normal in the ambient group.
    """
    H = c.subgroup
    if group is not None and group != H.parent:
        raise NotNormalError("cocycle does not live inside the given group")
    if not H.is_normal():
        raise NotNormalError("subgroup is not normal; the G-action is undefined")
    for g in H.right_cosets().reps:
        if g == 0:
            continue
        diff = c.conjugate(g).quotient_exps(c)
        if not is_trivial_class(diff):
            return False
    return True


def invariance_obstruction(
    c: Cocycle2,
) -> Optional[tuple[int, CoboundaryObstruction]]:
    """The first failing coset representative with its congruence obstruction,
    or None when the class is G-invariant."""
    H = c.subgroup
    if not H.is_normal():
        raise NotNormalError("subgroup is not normal; the G-action is undefined")
    for g in H.right_cosets().reps:
        if g == 0:
            continue
        diff = c.conjugate(g).quotient_exps(c)
        wit, obstruction = trivial_class_obstruction(diff)
        if wit is None:
            return g, obstruction
    return None


@dataclass(frozen=True)
class Binomial:
    """A binomial identity datum: orders hs vs hs∘sigma with scalar alpha."""

    hs: tuple[int, ...]
    sigma: tuple[int, ...]
    alpha_exp: int


def enumerate_binomials(c: Cocycle2, n: int) -> Iterator[Binomial]:
    """All (hs in H^j, sigma in S_j) with equal products, j = 1..n, with the
    attached alpha exponent; deterministic lexicographic order."""
    if n > 5:
        raise ValueError("binomial enumeration is exponential; length bound > 5 refused")
    H = c.subgroup
    g = H.parent
    for length in range(1, n + 1):
        for hs in product(H.members, repeat=length):
            total = g.product_seq(hs)
            for sigma in permutations(range(length)):
                permuted = tuple(hs[s] for s in sigma)
                if g.product_seq(permuted) == total:
                    yield Binomial(hs, sigma, c.binomial_alpha_exp(hs, sigma))
