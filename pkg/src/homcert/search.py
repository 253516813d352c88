"""Searching for Hom-post-Lie products, plus the instance generators and
brute-force oracles the test corpus is built from.

Finding a post-Lie product on a given Hom-Lie algebra splits into an exact
linear step (the bracket-compatibility identity is linear in the unknown
structure constants) and a quadratic filter (the twisted left-symmetry
identity), handled by bounded integer enumeration over the kernel basis.
"""

from __future__ import annotations

import itertools
import random
import zlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .errors import (BudgetError, CertificationError, InputError,
                     PreconditionError, UnsupportedError)
from .exactlin import (ONE, ZERO, Matrix, Tensor3, bilinear_eval, nullspace,
                       rank, rat)
from .homcore import (CertReport, EpsilonHomBialgebra, HomAlgebra,
                      _epsilon_delta_rows, _epsilon_mul_rows, check_axioms,
                      check_rota_baxter, kind_axioms, require_certified,
                      yau_twist)
from .functors import FunctorResult
from .hommod import HomModule, check_oop

DEFAULT_CANDIDATE_BUDGET = 200_000


# ---------------------------------------------------------------------------
# the linear system from the bracket-compatibility identity

def postlie_linear_system(l: HomAlgebra) -> Matrix:
    """Coefficient matrix of the linear constraints on a candidate product.

    Unknowns are the n^3 structure constants m[p,l,q] of the product, column
    index (p*n + l)*n + q; rows are indexed lexicographically by
    (k, i, j, output coordinate) for the identity evaluated at
    x = e_i, y = e_j, z = e_k.  Assembled by expanding the identity

        alpha(z).[x, y] - [z.x, alpha(y)] - [alpha(x), z.y] = 0

    on basis triples (not from any pre-digested index formula): writing
    alpha(e_k) = sum_p A[p,k] e_p and [e_i,e_j] = sum_l c[i,j,l] e_l, the
    three terms contribute A[p,k] c[i,j,l] at column (p,l,q), minus
    sum_p A[p,j] c[l,p,q] at column (k,i,l), minus sum_p A[p,i] c[p,l,q]
    at column (k,j,l).
    """
    if l.kind != "hom-lie":
        raise InputError("postlie_linear_system expects a hom-lie algebra")
    require_certified(l)
    n = l.dim
    c = l.op("bracket")
    A = l.alpha
    rows = []
    for k, i, j in itertools.product(range(n), repeat=3):
        block = [[ZERO] * (n ** 3) for _ in range(n)]
        for p in range(n):
            apk = A[p, k]
            if apk:
                for lx in range(n):
                    coeff = c[i, j, lx]
                    if coeff:
                        base = (p * n + lx) * n
                        w = apk * coeff
                        for q in range(n):
                            block[q][base + q] += w
        for lx in range(n):
            col_ki = (k * n + i) * n + lx
            col_kj = (k * n + j) * n + lx
            for q in range(n):
                s1 = ZERO
                s2 = ZERO
                for p in range(n):
                    if A[p, j]:
                        s1 += A[p, j] * c[lx, p, q]
                    if A[p, i]:
                        s2 += A[p, i] * c[p, lx, q]
                if s1:
                    block[q][col_ki] -= s1
                if s2:
                    block[q][col_kj] -= s2
        rows.extend(block)
    return Matrix(rows) if rows else Matrix.zeros(0, 0)


@dataclass(frozen=True)
class PostLieCandidateSpace:
    """Kernel of the linear constraints: every integer combination of the
    basis tensors satisfies the bracket-compatibility identity exactly."""

    homlie: HomAlgebra
    basis: tuple[Tensor3, ...]
    ambient_dim: int
    rank: int


def _compat_defect_zero(l: HomAlgebra, product: Tensor3) -> bool:
    """Second, independent evaluation path for the linear constraints: run the
    bracket-compatibility axiom of the certification layer on all triples."""
    candidate = HomAlgebra(l.dim, "hom-postlie",
                           {"bracket": l.op("bracket"), "mul": product}, l.alpha)
    for spec in kind_axioms(candidate):
        if spec.name == "postlie-bracket-compatibility":
            from .homcore import check_identity
            return check_identity(spec, l.dim).passed
    raise AssertionError("compatibility axiom missing from post-Lie system")


def postlie_candidate_space(l: HomAlgebra) -> PostLieCandidateSpace:
    n = l.dim
    system = postlie_linear_system(l)
    basis = []
    for v in nullspace(system):
        t = Tensor3(n, n, n, v.column(0))
        if not _compat_defect_zero(l, t):
            raise AssertionError(
                "nullspace tensor fails independent re-evaluation of the linear identity")
        basis.append(t)
    ambient = n ** 3
    return PostLieCandidateSpace(l, tuple(basis), ambient, ambient - len(basis))


def _twisted_left_symmetry_holds(mul: Tensor3, br: Tensor3, acols, n: int) -> bool:
    """Early-exit evaluation of the quadratic identity on all basis triples."""
    for i, j, k in itertools.product(range(n), repeat=3):
        t1 = bilinear_eval(mul, acols[k], mul.product_vec(j, i))
        t2 = bilinear_eval(mul, acols[j], mul.product_vec(k, i))
        t3 = bilinear_eval(mul, mul.product_vec(j, k), acols[i])
        t4 = bilinear_eval(mul, mul.product_vec(k, j), acols[i])
        t5 = bilinear_eval(mul, br.product_vec(j, k), acols[i])
        for a, b, c, d, e in zip(t1, t2, t3, t4, t5):
            if a - b + c - d + e:
                return False
    return True


def iter_postlie_candidates(l: HomAlgebra, combo_bound: int,
                            max_candidates: int = DEFAULT_CANDIDATE_BUDGET
                            ) -> Iterator[tuple[tuple[int, ...], Tensor3]]:
    """All bounded integer combinations of the kernel basis, in lexicographic
    coefficient order; raises BudgetError before enumerating too many."""
    if combo_bound < 0:
        raise InputError("combo_bound must be non-negative")
    space = postlie_candidate_space(l)
    d = len(space.basis)
    total = (2 * combo_bound + 1) ** d
    if total > max_candidates:
        raise BudgetError(
            f"candidate box has {total} points over {d} kernel directions, "
            f"budget is {max_candidates}", needed=total, budget=max_candidates)
    n = l.dim
    flats = [t.data for t in space.basis]
    for coeffs in itertools.product(range(-combo_bound, combo_bound + 1), repeat=d):
        flat = [ZERO] * (n ** 3)
        for coeff, base in zip(coeffs, flats):
            if coeff:
                for pos, v in enumerate(base):
                    if v:
                        flat[pos] += coeff * v
        yield coeffs, Tensor3(n, n, n, flat)


def postlie_search(l: HomAlgebra, combo_bound: int,
                   max_candidates: int = DEFAULT_CANDIDATE_BUDGET) -> list[FunctorResult]:
    """Every bounded-box candidate product satisfying both defining identities,
    each returned as a fully certified Hom-post-Lie algebra."""
    br = l.op("bracket")
    acols = [l.alpha.column(i) for i in range(l.dim)]
    survivors = []
    for coeffs, mul in iter_postlie_candidates(l, combo_bound, max_candidates):
        if _twisted_left_symmetry_holds(mul, br, acols, l.dim):
            out = HomAlgebra(l.dim, "hom-postlie",
                             {"bracket": br, "mul": mul}, l.alpha)
            cert = check_axioms(out)
            if not cert.passed:
                raise AssertionError(
                    "search filter and axiom checker disagree on a survivor")
            prov = ("postlie-search",
                    (("bound", combo_bound), ("coeffs", coeffs)), (l.digest(),))
            survivors.append(FunctorResult(out, cert, prov))
    return survivors


# ---------------------------------------------------------------------------
# brute-force oracles

def brute_force_oop_search(a: HomAlgebra, m: HomModule, entry_bound: int,
                           max_candidates: int = DEFAULT_CANDIDATE_BUDGET) -> list[Matrix]:
    """All integer matrices T with entries in [-bound, bound] passing the
    O-operator certification, in row-major lexicographic order."""
    if entry_bound < 0:
        raise InputError("entry_bound must be non-negative")
    cells = a.dim * m.mdim
    total = (2 * entry_bound + 1) ** cells
    if total > max_candidates:
        raise BudgetError(
            f"operator box has {total} points, budget is {max_candidates}",
            needed=total, budget=max_candidates)
    found = []
    for flat in itertools.product(range(-entry_bound, entry_bound + 1), repeat=cells):
        t = Matrix([flat[r * m.mdim:(r + 1) * m.mdim] for r in range(a.dim)])
        if check_oop(t, m).passed:
            found.append(t)
    return found


def brute_force_rb_search(a: HomAlgebra, weight, entry_bound: int,
                          max_candidates: int = DEFAULT_CANDIDATE_BUDGET) -> list[Matrix]:
    """All integer matrices in the box certified as Rota-Baxter operators of
    the given weight (including the twist-commutation requirement)."""
    if entry_bound < 0:
        raise InputError("entry_bound must be non-negative")
    cells = a.dim * a.dim
    total = (2 * entry_bound + 1) ** cells
    if total > max_candidates:
        raise BudgetError(
            f"operator box has {total} points, budget is {max_candidates}",
            needed=total, budget=max_candidates)
    found = []
    for flat in itertools.product(range(-entry_bound, entry_bound + 1), repeat=cells):
        r = Matrix([flat[i * a.dim:(i + 1) * a.dim] for i in range(a.dim)])
        if check_rota_baxter(a, r, weight).passed:
            found.append(r)
    return found


def brute_force_epsilon_bialgebras(mul: Tensor3, alpha: Matrix, entry_bound: int = 1,
                                   max_candidates: int = DEFAULT_CANDIDATE_BUDGET
                                   ) -> list[EpsilonHomBialgebra]:
    """All coproducts with entries in [-bound, bound] making (mul, delta,
    alpha) satisfy the bialgebra prerequisites.  Returns [] when the fixed
    product-side prerequisites already fail."""
    n = mul.d1
    probe = EpsilonHomBialgebra(n, mul, Tensor3.zeros(n), alpha)
    if not all(r.passed for r in _epsilon_mul_rows(probe)):
        return []
    cells = n ** 3
    total = (2 * entry_bound + 1) ** cells
    if total > max_candidates:
        raise BudgetError(
            f"coproduct box has {total} points, budget is {max_candidates}",
            needed=total, budget=max_candidates)
    found = []
    for flat in itertools.product(range(-entry_bound, entry_bound + 1), repeat=cells):
        cand = EpsilonHomBialgebra(n, mul, Tensor3(n, n, n, flat), alpha)
        if all(r.passed for r in _epsilon_delta_rows(cand)):
            found.append(cand)
    return found


# ---------------------------------------------------------------------------
# deterministic instance generation

GENERATORS = ("zero-product", "hand-catalog", "yau-twist-catalog", "nullspace-sample")


@dataclass(frozen=True)
class RandomInstanceSpec:
    kind: str
    dim: int
    seed: int
    generator: str


def _rng_for(spec: RandomInstanceSpec) -> random.Random:
    tag = f"{spec.kind}|{spec.dim}|{spec.generator}".encode()
    return random.Random((zlib.crc32(tag) << 32) ^ (spec.seed & 0xFFFFFFFFFFFF))


def _rnd_rat(rng: random.Random):
    return rat(Fraction(rng.randint(-3, 3), rng.choice((1, 2, 3))))


def _rnd_nonzero(rng: random.Random):
    while True:
        q = _rnd_rat(rng)
        if q:
            return q


def sc_tensor(n: int, entries: dict) -> Tensor3:
    """Structure constants from a sparse {(i, j): {k: coeff}} map, 0-based."""
    flat = [ZERO] * (n ** 3)
    for (i, j), targets in entries.items():
        for k, v in targets.items():
            flat[(i * n + j) * n + k] = rat(v)
    return Tensor3(n, n, n, flat)


def _diag(*values) -> Matrix:
    n = len(values)
    return Matrix([[rat(values[i]) if i == j else ZERO for j in range(n)]
                   for i in range(n)])


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: HomAlgebra
    endo: Callable[[random.Random], Matrix]


def _unit_like(n: int) -> Tensor3:
    """Truncated polynomial algebra on basis 1, x, ..., x^(n-1)."""
    entries = {}
    for i in range(n):
        for j in range(n):
            k = i + j  # e_i = x^i with 0-based exponents
            if k < n:
                entries[(i, j)] = {k: 1}
    return sc_tensor(n, entries)


def _truncated_endo(n: int):
    def endo(rng):
        s = _rnd_rat(rng)
        return _diag(*[s ** i for i in range(n)])
    return endo


def _build_catalog() -> dict[str, tuple[CatalogEntry, ...]]:
    I2, I3 = Matrix.identity(2), Matrix.identity(3)

    def alg(dim, kind, ops, alpha):
        return HomAlgebra(dim, kind, ops, alpha)

    catalog: dict[str, list[CatalogEntry]] = {k: [] for k in (
        "hom-associative", "hom-lie", "hom-prelie", "hom-novikov",
        "hom-postlie", "hom-dendriform", "hom-l-dendriform")}

    # associative: truncated polynomial algebras and a square-zero line
    for n in (1, 2, 3, 4):
        catalog["hom-associative"].append(CatalogEntry(
            f"truncated-poly-{n}",
            alg(n, "hom-associative", {"mul": _unit_like(n)}, Matrix.identity(n)),
            _truncated_endo(n)))
    null_square = sc_tensor(2, {(0, 0): {1: 1}})
    catalog["hom-associative"].append(CatalogEntry(
        "null-square",
        alg(2, "hom-associative", {"mul": null_square}, I2),
        lambda rng: (lambda s: _diag(s, s * s))(_rnd_rat(rng))))

    # lie: abelian, the nonabelian 2-dim algebra, heisenberg, a solvable 3-dim
    catalog["hom-lie"].append(CatalogEntry(
        "abelian-2", alg(2, "hom-lie", {"bracket": Tensor3.zeros(2)}, I2),
        lambda rng: Matrix([[_rnd_rat(rng) for _ in range(2)] for _ in range(2)])))
    catalog["hom-lie"].append(CatalogEntry(
        "abelian-3", alg(3, "hom-lie", {"bracket": Tensor3.zeros(3)}, I3),
        lambda rng: Matrix([[_rnd_rat(rng) for _ in range(3)] for _ in range(3)])))
    affine = sc_tensor(2, {(0, 1): {1: 1}, (1, 0): {1: -1}})
    catalog["hom-lie"].append(CatalogEntry(
        "affine-line", alg(2, "hom-lie", {"bracket": affine}, I2),
        lambda rng: Matrix([[ONE, ZERO], [_rnd_rat(rng), _rnd_rat(rng)]])))
    heis = sc_tensor(3, {(0, 1): {2: 1}, (1, 0): {2: -1}})
    catalog["hom-lie"].append(CatalogEntry(
        "heisenberg", alg(3, "hom-lie", {"bracket": heis}, I3),
        lambda rng: (lambda a, b: _diag(a, b, a * b))(_rnd_rat(rng), _rnd_rat(rng))))
    solv = sc_tensor(3, {(0, 1): {1: 1}, (1, 0): {1: -1},
                         (0, 2): {2: 2}, (2, 0): {2: -2}})
    catalog["hom-lie"].append(CatalogEntry(
        "solvable-3", alg(3, "hom-lie", {"bracket": solv}, I3),
        lambda rng: _diag(1, _rnd_rat(rng), _rnd_rat(rng))))

    # prelie: non-associative instances plus the associative family
    left_shift = sc_tensor(2, {(0, 1): {1: 1}})
    catalog["hom-prelie"].append(CatalogEntry(
        "left-shift", alg(2, "hom-prelie", {"mul": left_shift}, I2),
        lambda rng: _diag(1, _rnd_rat(rng))))
    vector_fields = sc_tensor(2, {(0, 1): {0: 1}, (1, 1): {1: 1}})
    catalog["hom-prelie"].append(CatalogEntry(
        "vector-fields", alg(2, "hom-prelie", {"mul": vector_fields}, I2),
        lambda rng: _diag(_rnd_rat(rng), 1)))
    for n in (1, 2, 3):
        catalog["hom-prelie"].append(CatalogEntry(
            f"truncated-poly-{n}",
            alg(n, "hom-prelie", {"mul": _unit_like(n)}, Matrix.identity(n)),
            _truncated_endo(n)))
    catalog["hom-prelie"].append(CatalogEntry(
        "null-square", alg(2, "hom-prelie", {"mul": null_square}, I2),
        lambda rng: (lambda s: _diag(s, s * s))(_rnd_rat(rng))))

    # novikov: all left-commutative
    null_shift = sc_tensor(2, {(1, 1): {0: 1}})
    catalog["hom-novikov"].append(CatalogEntry(
        "null-shift", alg(2, "hom-novikov", {"mul": null_shift}, I2),
        lambda rng: (lambda s: _diag(s * s, s))(_rnd_rat(rng))))
    skew_pair = sc_tensor(3, {(1, 2): {0: 1}, (2, 1): {0: -1}})
    catalog["hom-novikov"].append(CatalogEntry(
        "skew-pair", alg(3, "hom-novikov", {"mul": skew_pair}, I3),
        lambda rng: (lambda b, c: _diag(b * c, b, c))(_rnd_rat(rng), _rnd_rat(rng))))
    for n in (2, 3):
        catalog["hom-novikov"].append(CatalogEntry(
            f"truncated-poly-{n}",
            alg(n, "hom-novikov", {"mul": _unit_like(n)}, Matrix.identity(n)),
            _truncated_endo(n)))

    # postlie: preLie instances with zero bracket, plus a nonzero-bracket one
    catalog["hom-postlie"].append(CatalogEntry(
        "left-shift-trivial",
        alg(2, "hom-postlie", {"bracket": Tensor3.zeros(2), "mul": left_shift}, I2),
        lambda rng: _diag(1, _rnd_rat(rng))))
    catalog["hom-postlie"].append(CatalogEntry(
        "dual-numbers-trivial",
        alg(2, "hom-postlie", {"bracket": Tensor3.zeros(2), "mul": _unit_like(2)}, I2),
        _truncated_endo(2)))
    skew_bracket = sc_tensor(3, {(1, 2): {0: 2}, (2, 1): {0: -2}})
    catalog["hom-postlie"].append(CatalogEntry(
        "skew-pair-postlie",
        alg(3, "hom-postlie", {"bracket": skew_bracket, "mul": skew_pair}, I3),
        lambda rng: (lambda b, c: _diag(b * c, b, c))(_rnd_rat(rng), _rnd_nonzero(rng))))
    catalog["hom-postlie"].append(CatalogEntry(
        "truncated-poly-1-trivial",
        alg(1, "hom-postlie",
            {"bracket": Tensor3.zeros(1), "mul": _unit_like(1)}, Matrix.identity(1)),
        lambda rng: _diag(rng.choice((0, 1)))))

    # dendriform / l-dendriform: the split of dual numbers along its
    # square-zero Rota-Baxter operator, plus double-product variants
    split = sc_tensor(2, {(0, 0): {1: 1}})
    catalog["hom-dendriform"].append(CatalogEntry(
        "split-dual",
        alg(2, "hom-dendriform", {"left": split, "right": split}, I2),
        lambda rng: (lambda s: _diag(s, s * s))(_rnd_rat(rng))))
    catalog["hom-dendriform"].append(CatalogEntry(
        "double-dual",
        alg(2, "hom-dendriform",
            {"left": Tensor3.zeros(2), "right": _unit_like(2).scale(2)}, I2),
        _truncated_endo(2)))
    catalog["hom-l-dendriform"].append(CatalogEntry(
        "split-dual-ld",
        alg(2, "hom-l-dendriform", {"tleft": split, "tright": split}, I2),
        lambda rng: (lambda s: _diag(s, s * s))(_rnd_rat(rng))))
    catalog["hom-l-dendriform"].append(CatalogEntry(
        "split-dual-ld-transpose",
        alg(2, "hom-l-dendriform", {"tleft": -split, "tright": split}, I2),
        lambda rng: (lambda s: _diag(s, s * s))(_rnd_rat(rng))))

    return {k: tuple(v) for k, v in catalog.items()}


CATALOG = _build_catalog()


def _zero_ops(kind: str, dim: int) -> dict[str, Tensor3]:
    from .homcore import KIND_OPS
    names = KIND_OPS[kind] or ("mul",)
    return {name: Tensor3.zeros(dim) for name in names}


def _catalog_entries(kind: str, dim: int) -> list[CatalogEntry]:
    return [e for e in CATALOG.get(kind, ()) if e.algebra.dim == dim]


def random_instance(spec: RandomInstanceSpec) -> HomAlgebra:
    """A certified instance of the requested kind, bit-stable per spec."""
    rng = _rng_for(spec)
    gen = spec.generator

    if gen == "zero-product":
        alpha = Matrix([[_rnd_rat(rng) for _ in range(spec.dim)]
                        for _ in range(spec.dim)])
        out = HomAlgebra(spec.dim, spec.kind, _zero_ops(spec.kind, spec.dim), alpha)

    elif gen == "hand-catalog":
        entries = _catalog_entries(spec.kind, spec.dim)
        if not entries:
            raise UnsupportedError(
                f"no catalog entry for {spec.kind} at dim {spec.dim}")
        out = entries[rng.randrange(len(entries))].algebra

    elif gen == "yau-twist-catalog":
        entries = _catalog_entries(spec.kind, spec.dim)
        if not entries:
            raise UnsupportedError(
                f"no catalog entry for {spec.kind} at dim {spec.dim}")
        entry = entries[rng.randrange(len(entries))]
        out = yau_twist(entry.algebra, entry.endo(rng))

    elif gen == "nullspace-sample":
        if spec.kind != "hom-postlie":
            raise UnsupportedError(
                "nullspace sampling is only implemented for hom-postlie")
        lie_entries = _catalog_entries("hom-lie", spec.dim)
        if not lie_entries:
            raise UnsupportedError(f"no hom-lie seed at dim {spec.dim}")
        lie = lie_entries[rng.randrange(len(lie_entries))].algebra
        space = postlie_candidate_space(lie)
        br = lie.op("bracket")
        acols = [lie.alpha.column(i) for i in range(lie.dim)]
        product = Tensor3.zeros(spec.dim)
        for _ in range(40):
            flat = [ZERO] * (spec.dim ** 3)
            for t in space.basis:
                coeff = rng.randint(-1, 1)
                if coeff:
                    for pos, v in enumerate(t.data):
                        if v:
                            flat[pos] += coeff * v
            cand = Tensor3(spec.dim, spec.dim, spec.dim, flat)
            if _twisted_left_symmetry_holds(cand, br, acols, spec.dim):
                product = cand
                break
        out = HomAlgebra(spec.dim, "hom-postlie",
                         {"bracket": br, "mul": product}, lie.alpha)

    else:
        raise UnsupportedError(f"unknown generator {spec.generator!r}")

    report = check_axioms(out)
    if not report.passed:
        raise CertificationError(
            f"generator {gen!r} produced an uncertified {spec.kind} instance", report)
    return out


def corpus(kind: str, count: int, max_dim: int, seed: int,
           generators: Sequence[str] = ("hand-catalog", "yau-twist-catalog",
                                        "zero-product")) -> list[HomAlgebra]:
    """A deterministic corpus of certified instances, cycling generators and
    dimensions that can actually produce the kind."""
    dims = [d for d in range(1, max_dim + 1)]
    out = []
    attempt = 0
    while len(out) < count:
        gen = generators[attempt % len(generators)]
        dim = dims[(attempt // len(generators)) % len(dims)]
        spec = RandomInstanceSpec(kind, dim, seed + attempt, gen)
        attempt += 1
        try:
            out.append(random_instance(spec))
        except UnsupportedError:
            continue
        if attempt > 40 * count:
            raise UnsupportedError(f"cannot build a corpus of {kind} instances")
    return out
