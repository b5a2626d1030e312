"""The Legendre fibration as a whole: the elliptic surface cut out by
y^2*z*mu = x(x-z)(x*mu - lambda*z) in P^2 x P^1, fibered over the lambda-line.

This module assembles the F-discriminant divisor on the base, classifies the
fibers, tests splitting of the total space through the bigraded criterion,
cross-validates it against the base-couple criterion, computes the
fiber-restricted section space dimensions, decides the KGFR property, and
scans primes for the density report.

The 1/2 coefficient at infinity in the F-discriminant is an imported
constant; it is falsifiable here through the exact degree-1 identity that the
finite coefficients must complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import FieldElement
from .elliptic import supersingular_report
from .gsplit import (DEFAULT_EMAX, DEFAULT_POINT_BUDGET, GfsVerdict,
                     P1Divisor, P1Point, gfr_p1_bounded, gfs_p1,
                     gfs_bigraded_hypersurface)
from .mpoly import MPoly

DEFAULT_BIGRADED_PMAX = 13

NODAL = "nodal"
SMOOTH_ORDINARY = "smooth-ordinary"
SMOOTH_SUPERSINGULAR = "smooth-supersingular"
BOUNDARY_INFINITY = "boundary-infinity"


@dataclass(frozen=True)
class FDiscriminantReport:
    prime: int
    divisor: P1Divisor                      # 1/2 at infinity, mult/(p-1) on Lambda_p
    fiber_table: tuple[tuple[P1Point, str], ...]
    degree: Fraction

    def fiber_class(self, point: P1Point) -> str:
        for pt, label in self.fiber_table:
            if pt == point:
                return label
        return SMOOTH_ORDINARY


@lru_cache(maxsize=None)
def f_discriminant_legendre(p: int) -> FDiscriminantReport:
    """The base boundary divisor of the Legendre fibration at p.

    Coefficient 1/2 at infinity plus (root multiplicity)/(p-1) at every
    supersingular parameter; the total degree must come out exactly 1, which
    checks the imported infinity coefficient against the computed finite
    part (the finite multiplicities sum to (p-1)/2).
    """
    rep = supersingular_report(p)
    entries: list[tuple[P1Point, Fraction]] = [(P1Point.infinity(), Fraction(1, 2))]
    for root, mult in rep.roots:
        entries.append((P1Point(root), Fraction(mult, p - 1)))
    divisor = P1Divisor(p, entries)
    degree = divisor.degree
    if degree != 1:
        raise RuntimeError(
            f"F-discriminant degree check failed at p = {p}: degree {degree}")
    table: list[tuple[P1Point, str]] = []
    root_points = {P1Point(r) for r, _ in rep.roots}
    for v in range(p):
        pt = P1Point(FieldElement(v, p))
        if v in (0, 1):
            if pt in root_points:
                raise RuntimeError("nodal parameter appeared in the supersingular locus")
            table.append((pt, NODAL))
        elif pt in root_points:
            table.append((pt, SMOOTH_SUPERSINGULAR))
        else:
            table.append((pt, SMOOTH_ORDINARY))
    for pt in sorted(root_points, key=P1Point.sort_key):
        if pt.field_level == 2:
            table.append((pt, SMOOTH_SUPERSINGULAR))
    table.append((P1Point.infinity(), BOUNDARY_INFINITY))
    return FDiscriminantReport(prime=p, divisor=divisor,
                               fiber_table=tuple(table), degree=degree)


def classify_fibers(p: int) -> dict[P1Point, str]:
    """Fiber classification keyed by base point.

    Consistency guarantee: the finite support of the boundary divisor away
    from the nodal parameters consists exactly of the supersingular fibers.
    """
    rep = f_discriminant_legendre(p)
    table = dict(rep.fiber_table)
    for pt, c in rep.divisor.sorted_entries():
        if pt.is_infinity:
            continue
        if table[pt] != SMOOTH_SUPERSINGULAR:
            raise RuntimeError(f"boundary point {pt} is not a supersingular fiber")
    return table


@lru_cache(maxsize=None)
def legendre_bigraded_poly(p: int) -> MPoly:
    """y^2*z*mu - x(x-z)(x*mu - lambda*z) as a bidegree-(3, 1) form.

    Variables ordered (x, y, z, lambda, mu); the first three are the plane
    coordinates, the last two the base coordinates.
    """
    x = MPoly.variable(0, 5, p)
    y = MPoly.variable(1, 5, p)
    z = MPoly.variable(2, 5, p)
    lam = MPoly.variable(3, 5, p)
    mu = MPoly.variable(4, 5, p)
    return y * y * z * mu - x * (x - z) * (x * mu - lam * z)


def total_space_gfs(p: int, e_max: int = DEFAULT_EMAX,
                    pmax: int = DEFAULT_BIGRADED_PMAX) -> bool | None:
    """Splitting of the Legendre surface via the bigraded criterion.

    None means the bigraded budget was exceeded (Unknown), not a verdict.
    """
    if p > pmax:
        return None
    F = legendre_bigraded_poly(p)
    return any(gfs_bigraded_hypersurface(F, (3, 2), e) for e in range(1, e_max + 1))


def cbf_iii_check(p: int, e_max: int = DEFAULT_EMAX,
                  pmax: int = DEFAULT_BIGRADED_PMAX) -> bool | None:
    """Total-space splitting must match base-couple splitting.

    Compares two independently implemented criteria; a False here flags a
    genuine discrepancy to investigate, never an auto-resolved condition.
    None propagates an Unknown bigraded verdict.
    """
    total = total_space_gfs(p, e_max=e_max, pmax=pmax)
    if total is None:
        return None
    base = gfs_p1(f_discriminant_legendre(p).divisor, e_max=e_max).is_yes
    return total == base


def s0_fiber_dim_from_hasse(h: MPoly) -> int:
    """Dimension of the fiber-restricted stable section space at boundary 0.

    The relative trace is generically surjective exactly when the Hasse
    polynomial is not identically zero, giving dimension 1; degenerate input
    (the zero polynomial) gives 0.
    """
    return 0 if h.is_zero() else 1


def s0_fiber_legendre(p: int) -> int:
    dim = s0_fiber_dim_from_hasse(supersingular_report(p).poly)
    if dim != 1:
        raise RuntimeError(f"Hasse polynomial vanished identically at p = {p}")
    return dim


def s0_product(ordinary_E: bool, ordinary_Y: bool) -> tuple[int, int]:
    """(dim of total stable sections, dim of fiber-restricted ones) for E x Y.

    Product traces multiply: the total space dimension is 1 only when both
    factors are ordinary, while the fiber restriction only sees E.
    """
    total = 1 if (ordinary_E and ordinary_Y) else 0
    fiber = 1 if ordinary_E else 0
    return total, fiber


def q0_equals_s0_check(B: P1Divisor, e_max: int = DEFAULT_EMAX,
                       m_max: int = 3) -> bool:
    """Degree-2 boundary couples on P^1: the perturbation-stable section
    space equals the plain stable one.

    With K + B of degree zero every linear system |-m(K+B)| contains only
    the zero divisor, so the perturbation enumeration degenerates and both
    dimensions are computed through their defining routes and compared.
    """
    if B.degree != 2:
        raise ValueError("the check applies to degree-2 boundaries only")
    s0_dim = 1 if gfs_p1(B, e_max=e_max).is_yes else 0
    q0_dim = None
    for _m in range(1, m_max + 1):
        # members of |-m(K+B)| on P^1 with deg(K+B) = 0: the zero divisor only
        for pert in (P1Divisor.zero(B.prime),):
            dim = 1 if gfs_p1(B + pert, e_max=e_max).is_yes else 0
            q0_dim = dim if q0_dim is None else min(q0_dim, dim)
    return s0_dim == q0_dim


@dataclass(frozen=True)
class KgfrVerdict:
    prime: int
    fiber_gfs: bool
    base_gfr: GfsVerdict
    overall: str  # "KGFR" | "not-KGFR" | "unknown"

    def to_dict(self) -> dict:
        return {
            "fiber_gfs": self.fiber_gfs,
            "base_gfr": self.base_gfr.to_dict(),
            "overall": self.overall,
        }


def is_kgfr_legendre(p: int, e_max: int = DEFAULT_EMAX,
                     perturbation_budget: int = DEFAULT_POINT_BUDGET) -> KgfrVerdict:
    """KGFR decision for the Legendre fibration at p.

    Requires both a globally F-split general fiber and a globally F-regular
    base couple; the bounded base search may leave the verdict unknown.
    """
    fiber_gfs = s0_fiber_legendre(p) == 1
    base = gfr_p1_bounded(f_discriminant_legendre(p).divisor,
                          e_max=e_max, perturbation_budget=perturbation_budget)
    if not fiber_gfs or base.is_certified_no:
        overall = "not-KGFR"
    elif base.is_yes:
        overall = "KGFR"
    else:
        overall = "unknown"
    return KgfrVerdict(prime=p, fiber_gfs=fiber_gfs, base_gfr=base, overall=overall)


@dataclass(frozen=True)
class ScanRow:
    prime: int
    overall: str
    fiber_gfs: bool
    base_status: str


@dataclass(frozen=True)
class ScanReport:
    rows: tuple[ScanRow, ...]
    counts: dict
    fractions: dict

    def to_dict(self) -> dict:
        return {
            "rows": [{"prime": r.prime, "overall": r.overall,
                      "fiber_gfs": r.fiber_gfs, "base_status": r.base_status}
                     for r in self.rows],
            "counts": dict(self.counts),
            "fractions": {k: str(v) for k, v in self.fractions.items()},
        }


def _scan_one(args: tuple) -> ScanRow:
    p, e_max, budget = args
    v = is_kgfr_legendre(p, e_max=e_max, perturbation_budget=budget)
    return ScanRow(prime=p, overall=v.overall, fiber_gfs=v.fiber_gfs,
                   base_status=v.base_gfr.status)


def prime_scan(start: int, stop: int, e_max: int = DEFAULT_EMAX,
               perturbation_budget: int = DEFAULT_POINT_BUDGET,
               workers: int = 1) -> ScanReport:
    """KGFR density over the odd primes in [start, stop].

    Workers > 1 fans the per-prime computations out to a process pool; the
    report rows are assembled in input order either way, so output is
    deterministic regardless of completion order.
    """
    from .arith import is_prime
    primes = [p for p in range(max(3, start), stop + 1) if p % 2 and is_prime(p)]
    jobs = [(p, e_max, perturbation_budget) for p in primes]
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(_scan_one, jobs))
    else:
        rows = tuple(map(_scan_one, jobs))
    counts = {"KGFR": 0, "not-KGFR": 0, "unknown": 0}
    for r in rows:
        counts[r.overall] += 1
    total = len(rows)
    fractions = {k: (Fraction(v, total) if total else Fraction(0))
                 for k, v in counts.items()}
    return ScanReport(rows=rows, counts=counts, fractions=fractions)
