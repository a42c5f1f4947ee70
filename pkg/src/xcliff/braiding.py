"""Scattering operators: the middle crossing of the product/coproduct
compatibility square, solved exactly, plus the braid-equation, minimal
polynomial, naturality and module-action checks.

A scattering is a 4^n x 4^n matrix over the blade-pair basis of the tensor
square, pair (a, b) flattened as a * 2^n + b.  Solvers and operator checks
work on sparse column maps so the triple-space compositions stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .clifford import CliffordStructure, Tensor2
from .exterior import Multivector, blades, grade
from .scalars import (
    AffineSolutionSet,
    Matrix,
    SingularMatrixError,
    invert,
    poly_eval_matrix,
    solve_sparse_system,
)

Scattering = Matrix  # 4^n x 4^n over blade pairs


def pair_index(n: int, a: int, b: int) -> int:
    return (a << n) | b


def pair_unindex(n: int, idx: int) -> tuple[int, int]:
    return idx >> n, idx & ((1 << n) - 1)


def _sigma_columns(sigma: Matrix, n: int) -> dict:
    """Sparse column map: (a, b) -> {(u, v): coeff}."""
    dim2 = 1 << (2 * n)
    if sigma.nrows != dim2 or sigma.ncols != dim2:
        raise ValueError(f"scattering must be {dim2} x {dim2} for rank {n}")
    cols = {}
    for j in range(dim2):
        col = {}
        for i in range(dim2):
            v = sigma[(i, j)]
            if v:
                col[pair_unindex(n, i)] = v
        cols[pair_unindex(n, j)] = col
    return cols


def scattering_from_images(n: int, images: dict) -> Matrix:
    """Build a scattering matrix from {(a, b): {(u, v): coeff}} images."""
    dim2 = 1 << (2 * n)
    entries = {}
    for (a, b), img in images.items():
        j = pair_index(n, a, b)
        for (u, v), c in img.items():
            entries[(pair_index(n, u, v), j)] = c
    return Matrix.from_entries(dim2, dim2, entries)


def switch_scattering(n: int, graded: bool = True) -> Matrix:
    """The transposition on the tensor square; with graded=True odd-odd
    pairs pick up a minus sign."""
    images = {}
    for a in blades(n):
        for b in blades(n):
            sign = -1 if graded and (grade(a) & 1) and (grade(b) & 1) else 1
            images[(a, b)] = {(b, a): Fraction(sign)}
    return scattering_from_images(n, images)


def compatibility_defect(structure: CliffordStructure, sigma: Matrix) -> dict:
    """Defect of the compatibility square per input blade pair.

    For blades (x, y) the defect is coproduct(x *_eta y) minus the route
    through (product (x) product) . (id (x) sigma (x) id) . (coproduct x (x)
    coproduct y).  Returns only the nonzero defects, keyed by (x, y) bits;
    empty dict means the triple (product, coproduct, sigma) is compatible.
    """
    n = structure.n
    cols = _sigma_columns(sigma, n)
    defects = {}
    for s in blades(n):
        cop_s = structure.coproduct_table[s].terms
        for t in blades(n):
            direct: dict = {}
            prod_st = structure.product_table[(s, t)]
            for c_bits, coeff in prod_st.items():
                for k, v in structure.coproduct_table[c_bits].terms.items():
                    direct[k] = direct.get(k, Fraction(0)) + coeff * v
            routed: dict = {}
            cop_t = structure.coproduct_table[t].terms
            for (x1, x2), c1 in cop_s.items():
                for (y1, y2), c2 in cop_t.items():
                    c12 = c1 * c2
                    for (u, v), cs in cols[(x2, y1)].items():
                        w = c12 * cs
                        for a_bits, pa in structure.product_table[(x1, u)].items():
                            for b_bits, pb in structure.product_table[(v, y2)].items():
                                k = (a_bits, b_bits)
                                routed[k] = routed.get(k, Fraction(0)) + w * pa * pb
            diff = {k: c for k, c in
                    ((k, direct.get(k, Fraction(0)) - routed.get(k, Fraction(0)))
                     for k in set(direct) | set(routed)) if c}
            if diff:
                defects[(s, t)] = Tensor2(n, diff)
    return defects


def solve_sigma(structure: CliffordStructure) -> AffineSolutionSet:
    """Exact affine solution set of the compatibility square, linear in the
    16^n scattering entries (unknown (u, v) <- (p, q) flattened as
    pair_index(u, v) * 4^n + pair_index(p, q))."""
    n = structure.n
    dim2 = 1 << (2 * n)
    rows: list[dict] = []
    rhs: list[Fraction] = []
    for s in blades(n):
        cop_s = structure.coproduct_table[s].terms
        for t in blades(n):
            cop_t = structure.coproduct_table[t].terms
            # constant side: coproduct of the product
            direct: dict = {}
            for c_bits, coeff in structure.product_table[(s, t)].items():
                for (a, b), v in structure.coproduct_table[c_bits].terms.items():
                    k = (a, b)
                    direct[k] = direct.get(k, Fraction(0)) + coeff * v
            # unknown side: coefficient of sigma[(u,v) <- (x2,y1)] in output (a,b)
            eq: dict[tuple, dict] = {}
            for (x1, x2), c1 in cop_s.items():
                for (y1, y2), c2 in cop_t.items():
                    c12 = c1 * c2
                    in_idx = pair_index(n, x2, y1)
                    for u in blades(n):
                        prod_a = structure.product_table[(x1, u)]
                        if not prod_a:
                            continue
                        for v in blades(n):
                            prod_b = structure.product_table[(v, y2)]
                            if not prod_b:
                                continue
                            unk = pair_index(n, u, v) * dim2 + in_idx
                            for a_bits, pa in prod_a.items():
                                for b_bits, pb in prod_b.items():
                                    row = eq.setdefault((a_bits, b_bits), {})
                                    row[unk] = row.get(unk, Fraction(0)) + c12 * pa * pb
            for k in set(direct) | set(eq):
                rows.append(eq.get(k, {}))
                rhs.append(direct.get(k, Fraction(0)))
    return solve_sparse_system(rows, rhs, dim2 * dim2)


def solution_to_scattering(structure: CliffordStructure, flat: tuple) -> Matrix:
    dim2 = 1 << (2 * structure.n)
    return Matrix([[flat[i * dim2 + j] for j in range(dim2)] for i in range(dim2)])


def sigma_matrix(structure: CliffordStructure) -> Matrix | None:
    sol = solve_sigma(structure)
    if not sol.is_consistent:
        return None
    return solution_to_scattering(structure, sol.particular)


def closed_form_sigma(i2, j2) -> Matrix:
    """The unique rank-1 scattering when the parameter product is not 1.

    Pair basis order: (1,1), (1,i), (i,1), (i,i).
    """
    i2, j2 = Fraction(i2), Fraction(j2)
    a = i2 * j2
    if a == 1:
        raise ValueError("no unique scattering when the parameter product is 1")
    s = 1 / (1 - a)
    images = {
        (0, 0): {(0, 0): 1 - a * a * s, (1, 1): -j2 * s},
        (1, 1): {(1, 1): -s, (0, 0): -i2 * s},
        (0, 1): {(1, 0): s, (0, 1): a * s},
        (1, 0): {(0, 1): s, (1, 0): a * s},
    }
    return scattering_from_images(1, images)


def twelve_param_family_member(p, q, r, i2) -> Matrix:
    """A member of the compatible-scattering family at parameter product 1,
    defined for p + q + r = 0."""
    p, q, r, i2 = Fraction(p), Fraction(q), Fraction(r), Fraction(i2)
    if p + q + r != 0:
        raise ValueError("family members require p + q + r = 0")
    images = {
        (0, 0): {(0, 0): Fraction(1)},
        (0, 1): {(1, 0): Fraction(1), (0, 1): p},
        (1, 0): {(0, 1): Fraction(1), (1, 0): q},
        (1, 1): {(1, 1): r, (0, 0): -i2},
    }
    return scattering_from_images(1, images)


def check_min_polynomial(sigma: Matrix, a) -> bool:
    """Evaluate the quartic (x + 1)(x - b)(x^2 + a b x - b) with
    b = (1 + a)/(1 - a) at the scattering; true iff it vanishes exactly."""
    a = Fraction(a)
    if a == 1:
        raise ValueError("quartic undefined at parameter product 1")
    b = (1 + a) / (1 - a)
    # (x + 1)(x - b) = x^2 + (1 - b) x - b
    p1 = [-b, 1 - b, Fraction(1)]
    p2 = [-b, a * b, Fraction(1)]
    coeffs = _poly_mul(p1, p2)
    return poly_eval_matrix(coeffs, sigma).is_zero()


def _poly_mul(p: list, q: list) -> list:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


# -- tensor-cube machinery --------------------------------------------------

def _apply_sigma_12(cols, key, coeff, out):
    (a, b, c) = key
    for (u, v), cs in cols[(a, b)].items():
        k = (u, v, c)
        out[k] = out.get(k, Fraction(0)) + coeff * cs


def _apply_sigma_23(cols, key, coeff, out):
    (a, b, c) = key
    for (u, v), cs in cols[(b, c)].items():
        k = (a, u, v)
        out[k] = out.get(k, Fraction(0)) + coeff * cs


def _compose3(funcs, start: dict) -> dict:
    cur = start
    for f in funcs:
        nxt: dict = {}
        for key, coeff in cur.items():
            f(key, coeff, nxt)
        cur = {k: v for k, v in nxt.items() if v}
    return cur


def check_braid_equation(sigma: Matrix, n: int) -> tuple[bool, int]:
    """Evaluate both braid-relation composites on the tensor cube exactly.

    Returns (equal, number of basis triples where the two sides differ).
    """
    cols = _sigma_columns(sigma, n)
    s12 = lambda key, c, out: _apply_sigma_12(cols, key, c, out)
    s23 = lambda key, c, out: _apply_sigma_23(cols, key, c, out)
    bad = 0
    for a in blades(n):
        for b in blades(n):
            for c in blades(n):
                start = {(a, b, c): Fraction(1)}
                lhs = _compose3([s12, s23, s12], start)
                rhs = _compose3([s23, s12, s23], start)
                if lhs != rhs:
                    bad += 1
    return bad == 0, bad


def _check_product_naturality(structure: CliffordStructure, cols) -> bool:
    # sigma . (product (x) id) = (id (x) product) . (sigma (x) id) . (id (x) sigma)
    n = structure.n
    for a in blades(n):
        for b in blades(n):
            prod_ab = structure.product_table[(a, b)]
            for c in blades(n):
                lhs: dict = {}
                for m_bits, pc in prod_ab.items():
                    for (u, v), cs in cols[(m_bits, c)].items():
                        k = (u, v)
                        lhs[k] = lhs.get(k, Fraction(0)) + pc * cs
                lhs = {k: v for k, v in lhs.items() if v}
                mid = _compose3(
                    [lambda key, co, out: _apply_sigma_23(cols, key, co, out),
                     lambda key, co, out: _apply_sigma_12(cols, key, co, out)],
                    {(a, b, c): Fraction(1)})
                rhs: dict = {}
                for (x, y, z), coeff in mid.items():
                    for m_bits, pc in structure.product_table[(y, z)].items():
                        k = (x, m_bits)
                        rhs[k] = rhs.get(k, Fraction(0)) + coeff * pc
                rhs = {k: v for k, v in rhs.items() if v}
                if lhs != rhs:
                    return False
    return True


def _check_coproduct_naturality(structure: CliffordStructure, cols) -> bool:
    # (coproduct (x) id) . sigma = (id (x) sigma) . (sigma (x) id) . (id (x) coproduct)
    n = structure.n
    for a in blades(n):
        for b in blades(n):
            lhs: dict = {}
            for (u, v), cs in cols[(a, b)].items():
                for (u1, u2), cc in structure.coproduct_table[u].terms.items():
                    k = (u1, u2, v)
                    lhs[k] = lhs.get(k, Fraction(0)) + cs * cc
            lhs = {k: v for k, v in lhs.items() if v}
            start: dict = {}
            for (b1, b2), cc in structure.coproduct_table[b].terms.items():
                start[(a, b1, b2)] = cc
            rhs = _compose3(
                [lambda key, co, out: _apply_sigma_12(cols, key, co, out),
                 lambda key, co, out: _apply_sigma_23(cols, key, co, out)],
                start)
            if lhs != rhs:
                return False
    return True


@dataclass
class BraidedReport:
    """Four exact flags; the verdict is their conjunction."""

    invertible: bool
    braid_equation_holds: bool
    product_naturality_holds: bool
    coproduct_naturality_holds: bool

    @property
    def verdict_braided(self) -> bool:
        return (self.invertible and self.braid_equation_holds
                and self.product_naturality_holds and self.coproduct_naturality_holds)

    def to_json(self) -> dict:
        return {
            "invertible": self.invertible,
            "braid_equation": self.braid_equation_holds,
            "product_naturality": self.product_naturality_holds,
            "coproduct_naturality": self.coproduct_naturality_holds,
            "verdict_braided": self.verdict_braided,
        }


def check_braided(structure: CliffordStructure, sigma: Matrix) -> BraidedReport:
    """Braidedness of a compatible scattering: invertibility, the braid
    equation, and both naturality hexagons, all exact.  Raises if sigma does
    not solve the compatibility square in the first place."""
    if compatibility_defect(structure, sigma):
        raise ValueError("scattering does not solve the compatibility square")
    cols = _sigma_columns(sigma, structure.n)
    try:
        invert(sigma)
        invertible = True
    except SingularMatrixError:
        invertible = False
    braid_ok, _ = check_braid_equation(sigma, structure.n)
    return BraidedReport(
        invertible=invertible,
        braid_equation_holds=braid_ok,
        product_naturality_holds=_check_product_naturality(structure, cols),
        coproduct_naturality_holds=_check_coproduct_naturality(structure, cols),
    )


def module_action(structure: CliffordStructure, sigma: Matrix,
                  x: Multivector, t: Tensor2) -> Tensor2:
    """Action of x on a tensor pair: coproduct on the acting element, middle
    crossing by sigma, then pairwise products."""
    structure._check(x)
    if t.dim != structure.n:
        raise ValueError("rank mismatch")
    cols = _sigma_columns(sigma, structure.n)
    out: dict = {}
    for (x1, x2), cx in structure.coproduct(x).terms.items():
        for (t1, t2), ct in t.terms.items():
            w0 = cx * ct
            for (u, v), cs in cols[(x2, t1)].items():
                w = w0 * cs
                for a_bits, pa in structure.product_table[(x1, u)].items():
                    for b_bits, pb in structure.product_table[(v, t2)].items():
                        k = (a_bits, b_bits)
                        out[k] = out.get(k, Fraction(0)) + w * pa * pb
    return Tensor2(structure.n, out)


def braiding_report_json(structure: CliffordStructure, a=None) -> dict:
    """Per-instance scattering report used by the command-line front end."""
    from .scalars import format_scalar

    sol = solve_sigma(structure)
    report: dict = {
        "sigma_unique": sol.is_unique,
        "solution_space_dim": sol.dimension if sol.is_consistent else None,
    }
    if a is not None:
        report["a"] = format_scalar(Fraction(a))
    if not sol.is_consistent:
        report.update({"min_poly_ok": None, "invertible": None, "braid_eq": None,
                       "braided_verdict": None, "braided_flags": None})
        return report
    sigma = solution_to_scattering(structure, sol.particular)
    braided = check_braided(structure, sigma)
    report["invertible"] = braided.invertible
    report["braid_eq"] = braided.braid_equation_holds
    report["braided_verdict"] = braided.verdict_braided
    report["braided_flags"] = braided.to_json()
    if a is not None and Fraction(a) != 1:
        report["min_poly_ok"] = check_min_polynomial(sigma, a)
    else:
        report["min_poly_ok"] = None
    return report
