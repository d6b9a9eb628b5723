"""Construction of sandwich full flag codes from partial spreads.

A code with parameters (q, k1, r) lives in F_q^n with n = 2*k1 + r and
k2 = k1 + r. Its q^k2 + 1 generator matrices S[i] stack three layers: a
partial-spread layer A[i], a middle layer B[i] of r rows, and the next
partial-spread layer A[i+1] (wrapping around at the last index). Flag i is
the chain of row spaces of the leading j-row slices of S[i].
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field

from .fields import FiniteField, field_new
from .linalg import (
    LinAlgError,
    MatrixFq,
    Subspace,
    contains,
    dump_matrix,
    parse_matrix,
    rank,
    rowspace,
)


class ConstructionError(ValueError):
    pass


def companion_matrix(poly, field: FiniteField) -> MatrixFq:
    """Companion matrix of a monic polynomial.

    poly is the full coefficient tuple (p_0, ..., p_{k-1}, 1), low-to-high.
    The result has 1s on the superdiagonal and (-p_0, ..., -p_{k-1}) as the
    last row.
    """
    poly = tuple(poly)
    k = len(poly) - 1
    if k < 1 or poly[k] != 1:
        raise ConstructionError(f"polynomial {poly} is not monic of degree >= 1")
    rows = [[1 if j == i + 1 else 0 for j in range(k)] for i in range(k - 1)]
    rows.append([field.neg(c) for c in poly[:k]])
    return MatrixFq.from_rows(field, rows)


def matrix_power(M: MatrixFq, e: int) -> MatrixFq:
    """Ordinary matrix power by repeated squaring (e >= 0)."""
    if M.rows != M.cols:
        raise ConstructionError("matrix power of a non-square matrix")
    result = MatrixFq.identity(M.field, M.rows)
    base = M
    while e:
        if e & 1:
            result = result.matmul(base)
        base = base.matmul(base)
        e >>= 1
    return result


def _prime_factors(n: int):
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def matrix_order(M: MatrixFq) -> int:
    """Multiplicative order of M, assuming it divides q^k - 1.

    That holds for companion matrices of irreducible polynomials; anything
    else raises.
    """
    k = M.rows
    q = M.field.q
    if rank(M) < k:
        raise ConstructionError("singular matrix has no multiplicative order")
    n = q**k - 1
    if not matrix_power(M, n).is_identity():
        raise ConstructionError(f"matrix order does not divide q^k - 1 = {n}")
    e = n
    for p in _prime_factors(n):
        while e % p == 0 and matrix_power(M, e // p).is_identity():
            e //= p
    return e


def is_primitive(poly, field: FiniteField) -> bool:
    """True iff the companion matrix of poly has order q^deg - 1."""
    poly = tuple(poly)
    if poly[0] == 0:
        return False
    M = companion_matrix(poly, field)
    try:
        return matrix_order(M) == field.q ** (len(poly) - 1) - 1
    except ConstructionError:
        return False


def find_primitive_poly(field: FiniteField, k2: int):
    """Lexicographically smallest monic primitive polynomial of degree k2.

    Ordered by the coefficient tuple read from the highest degree down, so
    e.g. x^3+x+1 precedes x^3+x^2+1 over F_2; deterministic for a given
    field.
    """
    if k2 < 1:
        raise ConstructionError(f"degree k2 = {k2} must be >= 1")
    for tail in itertools.product(range(field.q), repeat=k2):
        poly = tuple(reversed(tail)) + (1,)
        if is_primitive(poly, field):
            return poly
    raise ConstructionError(
        f"no primitive polynomial of degree {k2} over F_{field.q}"
    )  # unreachable


def field_power(M: MatrixFq, e: int) -> MatrixFq:
    """Power of a companion matrix under the field-enumeration convention.

    The powers e = 0, 1, ..., q^k - 1 enumerate the field F_q[M] with the
    zero element standing first: e = 0 yields the ZERO matrix, not the
    identity, and e = q^k - 1 yields the identity.
    """
    k = M.rows
    top = M.field.q**k - 1
    if not (0 <= e <= top):
        raise ConstructionError(f"exponent {e} outside [0, {top}]")
    if e == 0:
        return MatrixFq.zero(M.field, k, k)
    return matrix_power(M, e)


@dataclass(frozen=True)
class SandwichParams:
    """Code parameters: field, spread dimension k1 >= 2, middle size 0 <= r < k1.

    Derived: k2 = k1 + r, ambient n = 2*k1 + r, cardinality q^k2 + 1.
    """

    field: FiniteField
    k1: int
    r: int
    prim_poly: tuple = None  # degree-k2 primitive polynomial, defaulted if None

    def __post_init__(self):
        if self.k1 < 2:
            raise ConstructionError(f"k1 = {self.k1} must be >= 2")
        if not (0 <= self.r < self.k1):
            raise ConstructionError(f"r = {self.r} violates 0 <= r < k1 = {self.k1}")
        if self.prim_poly is None:
            object.__setattr__(
                self, "prim_poly", find_primitive_poly(self.field, self.k2)
            )
        else:
            poly = tuple(int(c) for c in self.prim_poly)
            if len(poly) != self.k2 + 1:
                raise ConstructionError(
                    f"prim_poly must have degree k2 = {self.k2}"
                )
            if not is_primitive(poly, self.field):
                raise ConstructionError(f"polynomial {poly} is not primitive")
            object.__setattr__(self, "prim_poly", poly)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def k2(self) -> int:
        return self.k1 + self.r

    @property
    def n(self) -> int:
        return 2 * self.k1 + self.r

    @property
    def num_generators(self) -> int:
        return self.q**self.k2 + 1

    def companion(self) -> MatrixFq:
        return companion_matrix(self.prim_poly, self.field)


def _check_index(params: SandwichParams, i: int):
    if not (1 <= i <= params.num_generators):
        raise ConstructionError(
            f"index {i} outside [1, {params.num_generators}]"
        )


def layer_A(params: SandwichParams, i: int) -> MatrixFq:
    """First/third layer: k1 x n partial-spread generator.

    A[1] = [O | I | O]; A[i] = [I | first k1 rows of M^(i-2)] for i >= 2,
    with the zero-matrix convention at exponent 0 (so A[2]'s right block is
    zero).
    """
    _check_index(params, i)
    F, k1, n, r = params.field, params.k1, params.n, params.r
    if i == 1:
        rows = [
            [0] * k1 + [1 if j == a else 0 for j in range(k1)] + [0] * r
            for a in range(k1)
        ]
        return MatrixFq.from_rows(F, rows)
    right = field_power(params.companion(), i - 2).first_rows(k1)
    rows = [
        [1 if j == a else 0 for j in range(k1)] + list(right.row(a))
        for a in range(k1)
    ]
    return MatrixFq.from_rows(F, rows)


def _middle_block(params: SandwichParams) -> MatrixFq:
    """The fixed rank-r block inside B[2]: first row (1 0 ... 0), then
    [O_{(r-1) x (k1+1)} | I_{r-1}], r x k2 overall."""
    k2, r = params.k2, params.r
    rows = [[1] + [0] * (k2 - 1)]
    for a in range(r - 1):
        row = [0] * (params.k1 + 1) + [1 if j == a else 0 for j in range(r - 1)]
        rows.append(row)
    return MatrixFq.from_rows(params.field, rows)


def layer_B(params: SandwichParams, i: int) -> MatrixFq | None:
    """Middle layer: r x n matrix, or None when r = 0 (no middle layer).

    B[1] = [O | I_r] (rightmost columns); B[2] = [O | fixed rank-r block];
    B[i] = [O | last r rows of M^(i-2)] for i >= 3.
    """
    _check_index(params, i)
    if params.r == 0:
        return None
    F, k1, r, n = params.field, params.k1, params.r, params.n
    if i == 1:
        rows = [
            [0] * (2 * k1) + [1 if j == a else 0 for j in range(r)] for a in range(r)
        ]
        return MatrixFq.from_rows(F, rows)
    if i == 2:
        right = _middle_block(params)
    else:
        right = field_power(params.companion(), i - 2).last_rows(r)
    rows = [[0] * k1 + list(right.row(a)) for a in range(r)]
    return MatrixFq.from_rows(F, rows)


def layer_S(params: SandwichParams, i: int) -> MatrixFq:
    """Full n x n generator: A[i] over B[i] over A[i+1], wrapping A[1] in at
    the last index. Always full rank; anything else is an internal error."""
    _check_index(params, i)
    nxt = 1 if i == params.num_generators else i + 1
    S = layer_A(params, i)
    B = layer_B(params, i)
    if B is not None:
        S = S.stack(B)
    S = S.stack(layer_A(params, nxt))
    if rank(S) != params.n:
        raise ConstructionError(
            f"generator S[{i}] is rank-deficient (internal error):\n{dump_matrix(S)}"
        )
    return S


class Flag:
    """A full flag: strictly nested subspaces of dimensions 1 .. n-1."""

    __slots__ = ("ambient", "subspaces")

    def __init__(self, subspaces):
        subspaces = tuple(subspaces)
        if not subspaces:
            raise ConstructionError("empty flag")
        ambient = subspaces[0].ambient
        if len(subspaces) != ambient - 1:
            raise ConstructionError(
                f"full flag in F^{ambient} needs {ambient - 1} subspaces"
            )
        for j, sub in enumerate(subspaces, start=1):
            if sub.ambient != ambient or sub.dim != j:
                raise ConstructionError(f"subspace {j} has dim {sub.dim}, want {j}")
        for lower, upper in zip(subspaces, subspaces[1:]):
            if not contains(upper, lower):
                raise ConstructionError("flag subspaces are not nested")
        self.ambient = ambient
        self.subspaces = subspaces

    def __getitem__(self, j: int) -> Subspace:
        """1-based access: flag[j] is the j-dimensional subspace."""
        if not (1 <= j <= len(self.subspaces)):
            raise IndexError(j)
        return self.subspaces[j - 1]

    def __len__(self):
        return len(self.subspaces)

    def __eq__(self, other):
        return isinstance(other, Flag) and self.subspaces == other.subspaces

    def __hash__(self):
        return hash(self.subspaces)


def flag_from_generator(S: MatrixFq) -> Flag:
    """Flag of the row spaces of the leading j-row slices of a full-rank
    square generator."""
    n = S.cols
    return Flag(rowspace(S.first_rows(j)) for j in range(1, n))


@dataclass(frozen=True)
class FlagCode:
    """A built sandwich code: parameters, generators S[1..q^k2+1], flags."""

    params: SandwichParams
    generators: tuple
    flags: tuple
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __len__(self):
        return len(self.flags)

    @property
    def ambient(self) -> int:
        return self.params.n


def build_code(params: SandwichParams) -> FlagCode:
    """Construct the full flag code for the given parameters.

    Deterministic; validates cardinality and flag distinctness.
    """
    generators = tuple(
        layer_S(params, i) for i in range(1, params.num_generators + 1)
    )
    flags = tuple(flag_from_generator(S) for S in generators)
    if len(set(flags)) != params.num_generators:
        raise ConstructionError("constructed flags are not pairwise distinct")
    return FlagCode(params, generators, flags)


# -- code serialization --------------------------------------------------------


def code_to_dict(code: FlagCode) -> dict:
    p = code.params
    return {
        "params": {
            "p": p.field.p,
            "m": p.field.m,
            "modulus": list(p.field.modulus),
            "k1": p.k1,
            "r": p.r,
            "prim_poly": list(p.prim_poly),
        },
        "generators": [dump_matrix(S) for S in code.generators],
    }


def code_to_json(code: FlagCode) -> str:
    return json.dumps(code_to_dict(code), indent=2)


def code_from_dict(doc: dict) -> FlagCode:
    try:
        pd = doc["params"]
        fld = field_new(pd["p"], pd["m"], tuple(pd["modulus"]) or None)
        params = SandwichParams(fld, pd["k1"], pd["r"], tuple(pd["prim_poly"]))
        generators = tuple(parse_matrix(text, fld) for text in doc["generators"])
    except (KeyError, TypeError, LinAlgError) as exc:
        raise ConstructionError(f"malformed code document: {exc}") from exc
    if len(generators) != params.num_generators:
        raise ConstructionError(
            f"expected {params.num_generators} generators, found {len(generators)}"
        )
    flags = tuple(flag_from_generator(S) for S in generators)
    return FlagCode(params, generators, flags)


def code_from_json(text: str) -> FlagCode:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConstructionError(f"invalid JSON: {exc}") from exc
    return code_from_dict(doc)
