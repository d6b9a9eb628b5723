"""Distances, projected codes, ODFC/QODFC classification, and size bounds."""

from __future__ import annotations

from dataclasses import dataclass

from .construction import Flag, FlagCode
from .linalg import Subspace, sum_dim


class MetricsError(ValueError):
    pass


def subspace_distance(U: Subspace, V: Subspace) -> int:
    """d_S(U, V) = dim(U+V) - dim(U ∩ V); always even for equal dimensions."""
    s = sum_dim(U, V)
    return 2 * s - U.dim - V.dim


def flag_distance(F: Flag, G: Flag) -> int:
    """Sum of per-level subspace distances."""
    if F.ambient != G.ambient or len(F) != len(G):
        raise MetricsError("flags have different ambient/type")
    return sum(subspace_distance(u, v) for u, v in zip(F.subspaces, G.subspaces))


def _flags_of(code) -> tuple:
    if isinstance(code, FlagCode):
        return code.flags
    return tuple(code)


def min_flag_distance(code) -> int:
    """Minimum pairwise flag distance; 0 for a single flag."""
    if isinstance(code, FlagCode):
        cached = code._cache.get("d_f")
        if cached is not None:
            return cached
    flags = _flags_of(code)
    if not flags:
        raise MetricsError("empty flag list")
    if len(flags) == 1:
        d = 0
    else:
        d = min(
            flag_distance(flags[a], flags[b])
            for a in range(len(flags))
            for b in range(a + 1, len(flags))
        )
    if isinstance(code, FlagCode):
        code._cache["d_f"] = d
    return d


def max_distance(n: int, type_vector=None) -> int:
    """Largest achievable flag distance for the given type on F_q^n.

    Defaults to the full type (1, ..., n-1), where it is (n^2 - 1)/2 for odd
    n and n^2/2 for even n.
    """
    if type_vector is None:
        type_vector = range(1, n)
    total = 0
    for t in type_vector:
        if not (0 < t < n):
            raise MetricsError(f"type entry {t} out of range for n={n}")
        total += min(t, n - t)
    return 2 * total


@dataclass(frozen=True)
class ProjectedCode:
    """The deduplicated set of i-th subspaces of a flag code."""

    index: int
    subspaces: frozenset

    def __len__(self):
        return len(self.subspaces)


def projected_code(code, i: int) -> ProjectedCode:
    flags = _flags_of(code)
    n = flags[0].ambient
    if not (1 <= i <= n - 1):
        raise MetricsError(f"projected index {i} out of range for n={n}")
    return ProjectedCode(i, frozenset(f[i] for f in flags))


def projected_min_distance(pc: ProjectedCode) -> int:
    subs = list(pc.subspaces)
    if len(subs) == 1:
        return 0
    return min(
        subspace_distance(subs[a], subs[b])
        for a in range(len(subs))
        for b in range(a + 1, len(subs))
    )


def partial_spread_bound(q: int, n: int, k: int) -> int:
    """Upper bound floor((q^n - 1)/(q^k - 1)) on a partial k-spread's size."""
    if not (1 <= k < n):
        raise MetricsError(f"need 1 <= k < n, got k={k}, n={n}")
    return (q**n - 1) // (q**k - 1)


def aq_exact(q: int, n: int, k: int):
    """Exact maximum size of a k-dim code at distance 2k, when known.

    Applicable iff k > (q^rem - 1)/(q - 1) with rem = n mod k; returns None
    otherwise.
    """
    if not (1 <= k < n):
        raise MetricsError(f"need 1 <= k < n, got k={k}, n={n}")
    rem = n % k
    if k <= (q**rem - 1) // (q - 1):
        return None
    return (q**n - q ** (k + rem)) // (q**k - 1) + 1


@dataclass(frozen=True)
class CodeReport:
    cardinality: int
    d_f: int
    D_n: int
    l: int
    classification: str
    projected_distances: tuple
    projected_cardinalities: tuple
    L: int
    R: int
    bound_checks: dict

    def to_dict(self) -> dict:
        return {
            "cardinality": self.cardinality,
            "d_f": self.d_f,
            "D_n": self.D_n,
            "l": self.l,
            "classification": self.classification,
            "projected_distances": list(self.projected_distances),
            "projected_cardinalities": list(self.projected_cardinalities),
            "L": self.L,
            "R": self.R,
            "bound_checks": self.bound_checks,
        }


def cardinality_bound_check(code: FlagCode) -> dict:
    """Compare |C| against the exact bound (when applicable) or the partial
    spread bound, for sandwich codes with r in {0, 1, 2}."""
    p = code.params
    q, n, k1, r = p.q, p.n, p.k1, p.r
    size = len(code)
    report = {"applicable": r in (0, 1, 2), "cardinality": size}
    exact = aq_exact(q, n, k1)
    spread = partial_spread_bound(q, n, k1)
    report["lemma21_bound"] = spread
    report["lemma22_bound"] = exact
    if not report["applicable"]:
        return report
    bound = exact if exact is not None else spread
    report["bound"] = bound
    report["satisfied"] = size <= bound
    report["equality"] = size == bound
    return report


def classify(code) -> CodeReport:
    """Full distance/classification report for a flag code.

    Works for built codes and for user-supplied flag lists; the projected
    consistency checks are reported, never asserted (arbitrary inputs may
    legitimately violate them).
    """
    flags = _flags_of(code)
    if len(flags) < 2:
        raise MetricsError("classification needs at least 2 flags")
    n = flags[0].ambient
    d_f = min_flag_distance(code)
    D_n = max_distance(n)
    l2 = D_n - d_f
    if l2 % 2:
        raise MetricsError(f"odd distance deficit {l2} (corrupt input)")
    l = l2 // 2
    classification = {0: "ODFC", 1: "QODFC"}.get(l, "OTHER")

    projected = [projected_code(flags, i) for i in range(1, n)]
    proj_dist = tuple(projected_min_distance(pc) for pc in projected)
    proj_card = tuple(len(pc) for pc in projected)

    L = n // 2  # max i with 2i <= n
    R = (n + 1) // 2  # min i with 2i >= n

    # Equivalent ODFC criterion: the L-th and R-th projected codes have
    # maximum distance and the same cardinality as the code.
    odfc_criterion = (
        proj_dist[L - 1] == min(2 * L, 2 * (n - L))
        and proj_dist[R - 1] == min(2 * R, 2 * (n - R))
        and proj_card[L - 1] == len(flags)
        and proj_card[R - 1] == len(flags)
    )

    # Deficit-l consistency: projected distances maximal away from the middle
    # band, and (strictly below the l = (n-1)/2 edge case) full projected
    # cardinalities everywhere.
    maximal_indices = [i for i in range(1, n) if i <= L - l or i >= R + l]
    dist_maximal = all(
        proj_dist[i - 1] == min(2 * i, 2 * (n - i)) for i in maximal_indices
    )
    card_check = None
    if 2 * l < n - 1:
        card_check = all(c == len(flags) for c in proj_card)

    bound_checks = {
        "odfc_criterion": odfc_criterion,
        "odfc_criterion_agrees": odfc_criterion == (classification == "ODFC"),
        "projected_distances_maximal": dist_maximal,
        "projected_cardinalities_full": card_check,
    }
    if isinstance(code, FlagCode):
        bound_checks["cardinality"] = cardinality_bound_check(code)

    return CodeReport(
        cardinality=len(flags),
        d_f=d_f,
        D_n=D_n,
        l=l,
        classification=classification,
        projected_distances=proj_dist,
        projected_cardinalities=proj_card,
        L=L,
        R=R,
        bound_checks=bound_checks,
    )
