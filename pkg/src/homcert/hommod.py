"""Module structures over Hom-algebras and their constructions.

Actions are stored as one carrier-sized matrix per algebra basis element;
the action of a general element is the linear extension.  All axiom systems
are matrix identities per algebra basis pair, checked exactly; witnesses
carry the first differing column.

The post-Lie module axioms follow the element/operator form (the one every
proof in the source theory actually uses); the literal printed variant of
the first axiom is available behind ``strict_twist_commute`` for comparison
only.  The L-dendriform bimodule equations are the five multilinear
components of the semidirect-sum characterization; see the first preLie
bimodule axiom for the analogous printed-typo correction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import CertificationError, InputError, PreconditionError
from .exactlin import Matrix, Tensor3, block_diag, mat_mul, rat_str
from .homcore import (AxiomResult, CertReport, HomAlgebra, Witness,
                      canonical_algebra_key, check_axioms, check_morphism,
                      check_predicate, _digest)

MODULE_KINDS = {
    "assoc-bimodule": ("hom-associative", ("l", "r")),
    "lie-module": ("hom-lie", ("rho",)),
    "lie-representation": ("hom-lie", ("rho",)),
    "prelie-bimodule": ("hom-prelie", ("l", "r")),
    "postlie-module": ("hom-postlie", ("diamond", "bullet")),
    # lt/rt act for the tleft product, lr/rr for the tright product
    "ldend-bimodule": ("hom-l-dendriform", ("lt", "rt", "lr", "rr")),
}


@dataclass(frozen=True, eq=False)
class HomModule:
    """Carrier of dimension mdim with a module twist and named action families."""

    algebra: HomAlgebra
    mdim: int
    beta: Matrix
    actions: Mapping[str, tuple[Matrix, ...]]
    kind: str

    def __post_init__(self):
        if self.kind not in MODULE_KINDS:
            raise InputError(f"unknown module kind: {self.kind!r}")
        alg_kind, names = MODULE_KINDS[self.kind]
        if self.algebra.kind != alg_kind:
            raise InputError(
                f"module kind {self.kind!r} needs a {alg_kind} algebra, got {self.algebra.kind}")
        if tuple(sorted(self.actions)) != tuple(sorted(names)):
            raise InputError(
                f"module kind {self.kind!r} needs actions {names}, got {tuple(self.actions)}")
        m = self.mdim
        if self.beta.rows != m or self.beta.cols != m:
            raise InputError("beta must be mdim x mdim")
        for name, fam in self.actions.items():
            if len(fam) != self.algebra.dim:
                raise InputError(
                    f"action {name!r} needs {self.algebra.dim} matrices, got {len(fam)}")
            for mat in fam:
                if mat.rows != m or mat.cols != m:
                    raise InputError(f"action {name!r} matrices must be {m}x{m}")

    def __eq__(self, other):
        return (isinstance(other, HomModule) and self.kind == other.kind
                and self.mdim == other.mdim and self.algebra == other.algebra
                and self.beta == other.beta and dict(self.actions) == dict(other.actions))

    def action(self, name: str) -> tuple[Matrix, ...]:
        return self.actions[name]

    def act(self, name: str, weights: Sequence) -> Matrix:
        """Action of the algebra element with the given basis coefficients."""
        fam = self.actions[name]
        out = Matrix.zeros(self.mdim, self.mdim)
        for w, mat in zip(weights, fam):
            if w:
                out = out + mat.scale(w)
        return out

    def digest(self) -> str:
        actions = tuple(
            (name, tuple(tuple(tuple(map(rat_str, row)) for row in m.data)
                         for m in self.actions[name]))
            for name in sorted(self.actions))
        beta = tuple(tuple(map(rat_str, row)) for row in self.beta.data)
        return _digest(("module", self.kind, self.mdim,
                        canonical_algebra_key(self.algebra), beta, actions))


def hom_module(algebra, mdim, beta, actions, kind) -> HomModule:
    return HomModule(algebra=algebra, mdim=mdim, beta=beta,
                     actions={k: tuple(v) for k, v in actions.items()}, kind=kind)


# ---------------------------------------------------------------------------
# axiom checking

def _first_column_witness(indices, lhs: Matrix, rhs: Matrix) -> Witness:
    for v in range(lhs.cols):
        cl, cr = lhs.column(v), rhs.column(v)
        if cl != cr:
            return Witness(tuple(i + 1 for i in indices) + (v + 1,), cl, cr)
    raise AssertionError("witness requested for equal matrices")


def _matrix_axiom(name, n, arity, lhs_fn, rhs_fn) -> AxiomResult:
    for idx in itertools.product(range(n), repeat=arity):
        lhs, rhs = lhs_fn(*idx), rhs_fn(*idx)
        if lhs != rhs:
            return AxiomResult(name, False, _first_column_witness(idx, lhs, rhs))
    return AxiomResult(name, True, None)


def check_module_axioms(m: HomModule, strict_twist_commute: bool = False) -> CertReport:
    """Certify the module against the axiom system of its kind."""
    a = m.algebra
    n = a.dim
    al = a.alpha
    B = m.beta
    rows: list[AxiomResult] = []

    def at_alpha(name, i):
        return m.act(name, al.column(i))

    if m.kind == "assoc-bimodule":
        mul = a.op("mul")
        L, R = m.action("l"), m.action("r")
        rows.append(_matrix_axiom(
            "bimodule-left", n, 2,
            lambda i, j: mat_mul(m.act("l", mul.product_vec(i, j)), B),
            lambda i, j: mat_mul(at_alpha("l", i), L[j])))
        rows.append(_matrix_axiom(
            "bimodule-mixed", n, 2,
            lambda i, j: mat_mul(at_alpha("r", j), L[i]),
            lambda i, j: mat_mul(at_alpha("l", i), R[j])))
        rows.append(_matrix_axiom(
            "bimodule-right", n, 2,
            lambda i, j: mat_mul(at_alpha("r", j), R[i]),
            lambda i, j: mat_mul(m.act("r", mul.product_vec(i, j)), B)))

    elif m.kind in ("lie-module", "lie-representation"):
        br = a.op("bracket")
        Rho = m.action("rho")
        if m.kind == "lie-module":
            rows.append(_matrix_axiom(
                "module-twist-compat", n, 1,
                lambda i: mat_mul(B, Rho[i]),
                lambda i: mat_mul(at_alpha("rho", i), B)))
        rows.append(_matrix_axiom(
            "lie-action" if m.kind == "lie-module" else "lie-representation", n, 2,
            lambda i, j: mat_mul(m.act("rho", br.product_vec(i, j)), B),
            lambda i, j: (mat_mul(at_alpha("rho", i), Rho[j])
                          - mat_mul(at_alpha("rho", j), Rho[i]))))

    elif m.kind == "prelie-bimodule":
        mul = a.op("mul")
        L, R = m.action("l"), m.action("r")
        rows.append(_matrix_axiom(
            "prelie-bimodule-left", n, 2,
            lambda i, j: (mat_mul(m.act("l", mul.product_vec(i, j)), B)
                          - mat_mul(at_alpha("l", i), L[j])),
            lambda i, j: (mat_mul(m.act("l", mul.product_vec(j, i)), B)
                          - mat_mul(at_alpha("l", j), L[i]))))
        rows.append(_matrix_axiom(
            "prelie-bimodule-right", n, 2,
            lambda i, j: (mat_mul(at_alpha("l", i), R[j])
                          - mat_mul(at_alpha("r", j), L[i])),
            lambda i, j: (mat_mul(m.act("r", mul.product_vec(i, j)), B)
                          - mat_mul(at_alpha("r", j), R[i]))))

    elif m.kind == "postlie-module":
        br, mul = a.op("bracket"), a.op("mul")
        D, U = m.action("diamond"), m.action("bullet")
        rows.append(_matrix_axiom(
            "module-twist-diamond", n, 1,
            lambda i: mat_mul(B, D[i]),
            lambda i: mat_mul(at_alpha("diamond", i), B)))
        rows.append(_matrix_axiom(
            "module-twist-bullet", n, 1,
            lambda i: mat_mul(B, U[i]),
            lambda i: mat_mul(at_alpha("bullet", i), B)))
        if strict_twist_commute:
            rows.append(_matrix_axiom(
                "literal-twist-commute-diamond", n, 1,
                lambda i: mat_mul(B, D[i]), lambda i: mat_mul(D[i], B)))
            rows.append(_matrix_axiom(
                "literal-twist-commute-bullet", n, 1,
                lambda i: mat_mul(B, U[i]), lambda i: mat_mul(U[i], B)))
        rows.append(_matrix_axiom(
            "postlie-module-bracket-diamond", n, 2,
            lambda i, j: mat_mul(m.act("diamond", br.product_vec(i, j)), B),
            lambda i, j: (mat_mul(at_alpha("diamond", i), D[j])
                          - mat_mul(at_alpha("diamond", j), D[i]))))
        rows.append(_matrix_axiom(
            "postlie-module-product", n, 2,
            lambda i, j: mat_mul(m.act("diamond", mul.product_vec(i, j)), B),
            lambda i, j: (mat_mul(at_alpha("bullet", i), D[j])
                          - mat_mul(at_alpha("diamond", j), U[i]))))
        rows.append(_matrix_axiom(
            "postlie-module-bracket-bullet", n, 2,
            lambda i, j: mat_mul(m.act("bullet", br.product_vec(i, j)), B),
            lambda i, j: (mat_mul(at_alpha("bullet", i), U[j])
                          - mat_mul(at_alpha("bullet", j), U[i])
                          - mat_mul(m.act("bullet", mul.product_vec(i, j)), B)
                          + mat_mul(m.act("bullet", mul.product_vec(j, i)), B))))

    elif m.kind == "ldend-bimodule":
        q, p = a.op("tleft"), a.op("tright")
        hor = p + q
        LT, RT = m.action("lt"), m.action("rt")
        LR, RR = m.action("lr"), m.action("rr")

        def bracket_vec(i, j):
            hij = hor.product_vec(i, j)
            hji = hor.product_vec(j, i)
            return tuple(x - y for x, y in zip(hij, hji))

        def vert_vec(i, j):
            pij = p.product_vec(i, j)
            qji = q.product_vec(j, i)
            return tuple(x - y for x, y in zip(pij, qji))

        rows.append(_matrix_axiom(
            "ldend-bimodule-1", n, 2,
            lambda i, j: mat_mul(m.act("lr", bracket_vec(i, j)), B),
            lambda i, j: (mat_mul(at_alpha("lr", i), LR[j])
                          - mat_mul(at_alpha("lr", j), LR[i]))))
        rows.append(_matrix_axiom(
            "ldend-bimodule-2", n, 2,
            lambda i, j: mat_mul(m.act("lt", vert_vec(i, j)), B),
            lambda i, j: (mat_mul(at_alpha("lr", i), LT[j])
                          - mat_mul(at_alpha("lt", j), LR[i])
                          - mat_mul(at_alpha("lt", j), LT[i]))))
        rows.append(_matrix_axiom(
            "ldend-bimodule-3", n, 2,
            lambda i, j: mat_mul(m.act("rr", p.product_vec(i, j)), B),
            lambda i, j: (mat_mul(at_alpha("rr", j), RR[i])
                          + mat_mul(at_alpha("rr", j), RT[i])
                          + mat_mul(at_alpha("lr", i), RR[j])
                          - mat_mul(at_alpha("rr", j), LR[i])
                          - mat_mul(at_alpha("rr", j), LT[i]))))
        rows.append(_matrix_axiom(
            "ldend-bimodule-4", n, 2,
            lambda i, j: mat_mul(m.act("rr", q.product_vec(i, j)), B),
            lambda i, j: (mat_mul(at_alpha("rt", j), RR[i])
                          + mat_mul(at_alpha("lt", i), RR[j])
                          + mat_mul(at_alpha("lt", i), RT[j])
                          - mat_mul(at_alpha("rt", j), LT[i]))))
        rows.append(_matrix_axiom(
            "ldend-bimodule-5", n, 2,
            lambda i, j: mat_mul(m.act("rt", hor.product_vec(i, j)), B),
            lambda i, j: (mat_mul(at_alpha("lr", i), RT[j])
                          - mat_mul(at_alpha("rt", j), LR[i])
                          + mat_mul(at_alpha("rt", j), RT[i]))))

    else:
        raise InputError(f"no axiom system for module kind {m.kind!r}")

    return CertReport.from_results(rows)


def require_module_certified(m: HomModule, what="input module") -> CertReport:
    report = check_module_axioms(m)
    if not report.passed:
        failing = ", ".join(r.name for r in report.failing())
        raise PreconditionError(f"{what} fails {m.kind} axioms: {failing}", report)
    return report


def _certified_output(m: HomModule, what: str) -> HomModule:
    report = check_module_axioms(m)
    if not report.passed:
        failing = ", ".join(r.name for r in report.failing())
        raise CertificationError(f"{what} fails certification: {failing}", report)
    return m


def _require_multiplicative(a: HomAlgebra):
    report = check_predicate(a, "multiplicative")
    if not report.passed:
        raise PreconditionError("algebra is not multiplicative", report)


# ---------------------------------------------------------------------------
# constructions

def bimodule_to_lie_module(m: HomModule) -> HomModule:
    """(V, l - r, beta) as a module over the commutator Hom-Lie algebra."""
    if m.kind != "assoc-bimodule":
        raise InputError("expected an assoc-bimodule")
    require_module_certified(m)
    mul = m.algebra.op("mul")
    lie = HomAlgebra(m.algebra.dim, "hom-lie",
                     {"bracket": mul - mul.swap_arguments()}, m.algebra.alpha)
    lie_report = check_axioms(lie)
    if not lie_report.passed:
        raise CertificationError("commutator bracket fails hom-lie axioms", lie_report)
    rho = tuple(l - r for l, r in zip(m.action("l"), m.action("r")))
    out = HomModule(lie, m.mdim, m.beta, {"rho": rho}, "lie-module")
    return _certified_output(out, "derived lie-module")


def adjoint_postlie_module(l: HomAlgebra, k: int = 0) -> HomModule:
    """Self-module of a multiplicative Hom-post-Lie algebra.

    Acts by x (diamond) m = [alpha^k(x), m] and x (bullet) m = alpha^k(x).m;
    k = 0 is the tautological self-module.
    """
    if l.kind != "hom-postlie":
        raise InputError("expected a hom-postlie algebra")
    if k < 0:
        raise InputError("k must be non-negative")
    _require_multiplicative(l)
    ak = l.alpha.power(k)
    br, mul = l.op("bracket"), l.op("mul")

    def family(t: Tensor3):
        mats = []
        for i in range(l.dim):
            acc = Matrix.zeros(l.dim, l.dim)
            for pcoord, w in enumerate(ak.column(i)):
                if w:
                    acc = acc + t.left_mult_matrix(pcoord).scale(w)
            mats.append(acc)
        return tuple(mats)

    out = HomModule(l, l.dim, l.alpha,
                    {"diamond": family(br), "bullet": family(mul)},
                    "postlie-module")
    return _certified_output(out, "adjoint post-Lie module")


def direct_sum(m1: HomModule, m2: HomModule) -> HomModule:
    """Block-diagonal sum of two post-Lie modules over the same algebra."""
    if m1.kind != "postlie-module" or m2.kind != "postlie-module":
        raise InputError("direct_sum expects postlie-modules")
    if m1.algebra != m2.algebra:
        raise InputError("direct_sum needs modules over the same algebra")
    require_module_certified(m1, "first module")
    require_module_certified(m2, "second module")
    actions = {
        name: tuple(block_diag(x, y)
                    for x, y in zip(m1.action(name), m2.action(name)))
        for name in ("diamond", "bullet")
    }
    out = HomModule(m1.algebra, m1.mdim + m2.mdim,
                    block_diag(m1.beta, m2.beta), actions, "postlie-module")
    return _certified_output(out, "direct sum module")


def tensor_product(m1: HomModule, m2: HomModule, k: int = 1) -> HomModule:
    """Tensor product module with the algebra twisted into the action by alpha^k.

    Carrier basis e_p (x) f_q ordered lexicographically (p, q).
    """
    if m1.kind != "postlie-module" or m2.kind != "postlie-module":
        raise InputError("tensor_product expects postlie-modules")
    if m1.algebra != m2.algebra:
        raise InputError("tensor_product needs modules over the same algebra")
    if k < 0:
        raise InputError("k must be non-negative")
    _require_multiplicative(m1.algebra)
    require_module_certified(m1, "first module")
    require_module_certified(m2, "second module")
    a = m1.algebra
    ak = a.alpha.power(k)

    def family(name):
        f1, f2 = m1.action(name), m2.action(name)
        mats = []
        for i in range(a.dim):
            acc = Matrix.zeros(m1.mdim * m2.mdim, m1.mdim * m2.mdim)
            for u, w in enumerate(ak.column(i)):
                if w:
                    acc = acc + (f1[u].kron(m2.beta) + m1.beta.kron(f2[u])).scale(w)
            mats.append(acc)
        return tuple(mats)

    out = HomModule(a, m1.mdim * m2.mdim, m1.beta.kron(m2.beta),
                    {"diamond": family("diamond"), "bullet": family("bullet")},
                    "postlie-module")
    return _certified_output(out, "tensor product module")


def twist_n0(m: HomModule, n: int) -> HomModule:
    """Precompose both actions with alpha^n; same algebra, same module twist."""
    if m.kind != "postlie-module":
        raise InputError("twist_n0 expects a postlie-module")
    if n < 0:
        raise InputError("n must be non-negative")
    _require_multiplicative(m.algebra)
    require_module_certified(m)
    an = m.algebra.alpha.power(n)
    actions = {
        name: tuple(m.act(name, an.column(i)) for i in range(m.algebra.dim))
        for name in ("diamond", "bullet")
    }
    out = HomModule(m.algebra, m.mdim, m.beta, actions, "postlie-module")
    return _certified_output(out, "alpha^n twisted module")


def twist_0k(m: HomModule, k: int) -> tuple[HomAlgebra, HomModule]:
    """Postcompose actions with beta^(2^k - 1) over the correspondingly
    twisted algebra (products composed with alpha^(2^k - 1), twist alpha^(2^k))."""
    if m.kind != "postlie-module":
        raise InputError("twist_0k expects a postlie-module")
    if k < 0:
        raise InputError("k must be non-negative")
    _require_multiplicative(m.algebra)
    require_module_certified(m)
    e = 2 ** k - 1
    a = m.algebra
    ae = a.alpha.power(e)
    algebra = HomAlgebra(a.dim, "hom-postlie",
                         {name: t.postcompose(ae) for name, t in a.ops.items()},
                         a.alpha.power(e + 1))
    alg_report = check_axioms(algebra)
    if not alg_report.passed:
        raise CertificationError("twisted algebra fails hom-postlie axioms", alg_report)
    be = m.beta.power(e)
    actions = {
        name: tuple(mat_mul(be, mat) for mat in m.action(name))
        for name in ("diamond", "bullet")
    }
    out = HomModule(algebra, m.mdim, m.beta.power(e + 1), actions, "postlie-module")
    return algebra, _certified_output(out, "beta-power twisted module")


def twist_beta_data(m: HomModule, b: Matrix, bm: Matrix) -> tuple[HomAlgebra, HomModule]:
    """The twist formulas alone, with no compatibility checking.

    Used to compare against composites of the elementary twists; prefer
    ``twist_beta`` which verifies the hypotheses and certifies the output.
    """
    a = m.algebra
    algebra = HomAlgebra(a.dim, a.kind,
                         {name: t.postcompose(b) for name, t in a.ops.items()},
                         mat_mul(b, a.alpha))
    actions = {
        name: tuple(mat_mul(bm, m.act(name, b.column(i))) for i in range(a.dim))
        for name in m.actions
    }
    module = HomModule(algebra, m.mdim, mat_mul(m.beta, bm), actions, m.kind)
    return algebra, module


def twist_beta(m: HomModule, b: Matrix, bm: Matrix) -> tuple[HomAlgebra, HomModule]:
    """Twist a post-Lie module by an algebra endomorphism b and a compatible
    carrier map bm; returns the twisted algebra and module, both certified."""
    if m.kind != "postlie-module":
        raise InputError("twist_beta expects a postlie-module")
    a = m.algebra
    morphism = check_morphism(b, a, a)
    if not morphism.passed:
        failing = ", ".join(r.name for r in morphism.failing())
        raise PreconditionError(f"b is not an algebra endomorphism: {failing}", morphism)
    if mat_mul(m.beta, bm) != mat_mul(bm, m.beta):
        raise PreconditionError("bM does not commute with the module twist")
    for name in ("diamond", "bullet"):
        for i in range(a.dim):
            lhs = mat_mul(bm, m.action(name)[i])
            rhs = mat_mul(m.act(name, b.column(i)), bm)
            if lhs != rhs:
                raise PreconditionError(
                    f"bM does not intertwine the {name} action with b (basis index {i + 1})")
    algebra, module = twist_beta_data(m, b, bm)
    alg_report = check_axioms(algebra)
    if not alg_report.passed:
        raise CertificationError("beta-twisted algebra fails certification", alg_report)
    return algebra, _certified_output(module, "beta-twisted module")


# ---------------------------------------------------------------------------
# O-operators

def check_oop(t: Matrix, m: HomModule) -> CertReport:
    """Certify t : carrier -> algebra as an O-operator for the module's kind.

    The associative and preLie variants include the twist-compatibility
    alpha.T = T.beta from their definitions; the Lie variant requires it as
    well, since the functor proofs rewrite rho(T(beta(u))) as rho(alpha(T(u))).
    The module itself is assumed certified (callers enforce it).
    """
    a = m.algebra
    if t.rows != a.dim or t.cols != m.mdim:
        raise InputError(f"operator must be {a.dim}x{m.mdim}, got {t.rows}x{t.cols}")
    rows = []
    from .homcore import _matrix_equation_result
    rows.append(_matrix_equation_result(
        "oop-twist-compat", mat_mul(a.alpha, t), mat_mul(t, m.beta)))

    from .exactlin import bilinear_eval, vec_add, vec_sub

    if m.kind in ("lie-representation", "lie-module"):
        br = a.op("bracket")

        def rho_at(col):
            return m.act("rho", col)

        name = "o-operator-lie"

        def lhs(i, j):
            return bilinear_eval(br, t.column(i), t.column(j))

        def rhs(i, j):
            u = rho_at(t.column(i)).column(j)
            v = rho_at(t.column(j)).column(i)
            return t.apply(vec_sub(u, v))

    elif m.kind in ("assoc-bimodule", "prelie-bimodule"):
        mul = a.op("mul")
        name = ("o-operator-associative" if m.kind == "assoc-bimodule"
                else "o-operator-prelie")

        def lhs(i, j):
            return bilinear_eval(mul, t.column(i), t.column(j))

        def rhs(i, j):
            u = m.act("l", t.column(i)).column(j)
            v = m.act("r", t.column(j)).column(i)
            return t.apply(vec_add(u, v))

    else:
        raise InputError(f"O-operators are not defined for module kind {m.kind!r}")

    result = AxiomResult(name, True, None)
    for i, j in itertools.product(range(m.mdim), repeat=2):
        left, right = lhs(i, j), rhs(i, j)
        if left != right:
            result = AxiomResult(name, False, Witness((i + 1, j + 1), left, right))
            break
    rows.append(result)
    return CertReport.from_results(rows)
