"""Greek-letter bookkeeping: bidegrees, r-images, and the product classifier.

A Greek-letter element is named by a sequence A = (a_0, ..., a_n) of positive
integers; its bidegree is (n, t(A)) with

    t(A) = 2 a_n (p^n - 1) - 2 * sum_{i=0}^{n-1} a_i (p^i - 1).

The r-image table covers alpha_1, beta_1, beta_2, beta_{p/p} and gamma_t;
the product classifier computes the five detecting products of gamma_t in
cohomology (rank-derived verdicts) and cross-checks them against the number
theoretic predicates p | t(t^2-1) and p | t(t-1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import ExteriorCohomology
from .named import NamedClasses


@dataclass(frozen=True)
class GreekSpec:
    A: tuple
    name: str

    def __post_init__(self):
        if not self.A or any(a <= 0 for a in self.A):
            raise ValueError(f"sequence entries must be positive: {self.A}")
        if len(self.A) - 1 not in (1, 2, 3):
            raise ValueError(f"sequence length {len(self.A)} unsupported")


def alpha(t: int) -> GreekSpec:
    return GreekSpec((1, t), f"alpha_{t}")


def beta(s: int, j: int = 1) -> GreekSpec:
    name = f"beta_{s}" if j == 1 else f"beta_{s}/{j}"
    return GreekSpec((1, j, s), name)


def gamma(t: int) -> GreekSpec:
    return GreekSpec((1, 1, 1, t), f"gamma_{t}")


def bidegree(spec: GreekSpec, p: int):
    """(cohomological degree n, internal degree t(A)); stem = t(A) - n."""
    A = spec.A
    n = len(A) - 1
    tA = 2 * A[n] * (p**n - 1) - 2 * sum(A[i] * (p**i - 1) for i in range(n))
    return n, tA


@dataclass(frozen=True)
class RImage:
    greek: GreekSpec
    image: object  # ExteriorElement


class UnsupportedGreekError(ValueError):
    pass


def r_image(spec: GreekSpec, nc: NamedClasses) -> RImage:
    """Table of r-images; gamma_t coefficients reduced mod p."""
    p = nc.p
    t = nc.table
    A = spec.A
    if A == (1, 1):
        img = t["h0"]
    elif A == (1, 1, 1):
        img = -1 * t["b0"]
    elif A == (1, 1, 2):
        img = 2 * t["k0"]
    elif A == (1, p, p):
        img = -1 * t["b1"]
    elif len(A) == 4 and A[:3] == (1, 1, 1):
        tt = A[3]
        c_l = (-tt * (tt**2 - 1)) % p
        c_k = (-tt * (tt - 1)) % p
        img = c_l * t["l"] + c_k * (t["k1"] * t["zeta3"])
    else:
        raise UnsupportedGreekError(f"no r-image on record for {spec.name} with A={A}")
    return RImage(spec, img)


def degree_coherence(p: int, t_range=None):
    """Check internal degree of every r-image against t(A) mod 2(p^3-1)."""
    nc = NamedClasses(p=p)
    tmod = nc.engine.alg.tmod
    if t_range is None:
        t_range = range(1, p**2 + 1)
    specs = [alpha(1), beta(1), beta(2), beta(p, p)] + [gamma(t) for t in t_range]
    rows = []
    for spec in specs:
        img = r_image(spec, nc).image
        n, tA = bidegree(spec, p)
        if img.is_zero():
            rows.append({"name": spec.name, "status": "zero-image", "tA_mod": tA % tmod})
            continue
        grade = img.grade_of()
        ok = grade.t == tA % tmod and grade.s == n
        if not ok:
            raise AssertionError(
                f"{spec.name}: image grade {tuple(grade)} vs expected ({n}, {tA % tmod})"
            )
        rows.append({"name": spec.name, "status": "coherent", "sector": tuple(grade)})
    return rows


PRODUCT_NAMES = (
    "alpha1*gamma_t",
    "beta2*gamma_t",
    "beta1*gamma_t",
    "alpha1*b2*beta1*gamma_t",
    "h1*gamma_t",
)


def classify_products(p: int, t_range=None, nc: NamedClasses | None = None):
    """Rank-computed nonvanishing table for the five gamma_t products.

    Each row reports, per product, the class verdict with its certificate,
    plus the predicate cross-check columns.  The verdicts come from the
    cohomology engine; the predicates are only compared afterwards.
    """
    if nc is None:
        nc = NamedClasses(p=p)
    eng = nc.engine
    tbl = nc.table
    if t_range is None:
        t_range = range(1, p**2 + 1)
    factors = {
        "alpha1*gamma_t": [tbl["h0"]],
        "beta2*gamma_t": [2 * tbl["k0"]],
        "beta1*gamma_t": [-1 * tbl["b0"]],
        "alpha1*b2*beta1*gamma_t": [tbl["h0"], tbl["b2"], -1 * tbl["b0"]],
        "h1*gamma_t": [tbl["h1"]],
    }
    rows = []
    for t in t_range:
        rgamma = r_image(gamma(t), nc).image
        row = {"t": t, "products": {}, "agree": True}
        verdicts = {}
        for name in PRODUCT_NAMES:
            x = rgamma
            for f in factors[name]:
                x = f * x
            if x.is_zero():
                verdicts[name] = False
                row["products"][name] = {"nonzero": False, "certificate": "zero cochain"}
                continue
            cls = eng.reduce(x)
            verdicts[name] = not cls.is_zero()
            row["products"][name] = {
                "nonzero": not cls.is_zero(),
                "sector": tuple(cls.sector),
                "certificate": list(cls.coords),
            }
        full_pred = (t * (t**2 - 1)) % p != 0
        pair_pred = (t * (t - 1)) % p != 0
        row["predicate_full"] = full_pred
        row["predicate_pair"] = pair_pred
        all_five = all(verdicts.values())
        pair_nonzero = verdicts["beta1*gamma_t"] and verdicts["h1*gamma_t"]
        row["agree"] = (all_five == full_pred) and (pair_nonzero == pair_pred)
        rows.append(row)
    return rows


def classification_disagreements(rows):
    return [row["t"] for row in rows if not row["agree"]]


def gamma1_expansion_check(p: int = 7):
    """Exact expansion in the v2-coefficient ring:
    h0*(2k0 - 2 v2 b0)*(2 v2^(p-3) k0 + v2^(p-2) b0)
      = -2 v2^(p-2) h0 k0 b0 - 2 v2^(p-1) h0 b0^2."""
    nc = NamedClasses(p=p)
    alg = nc.engine.alg
    t = nc.table
    v2 = alg.v2
    lhs = t["h0"] * (2 * t["k0"] - 2 * (v2(1) * t["b0"])) * (
        2 * (v2(p - 3) * t["k0"]) + v2(p - 2) * t["b0"]
    )
    rhs = -2 * (v2(p - 2) * (t["h0"] * t["k0"] * t["b0"])) - 2 * (
        v2(p - 1) * (t["h0"] * t["b0"] * t["b0"])
    )
    if not (lhs - rhs).is_zero():
        raise AssertionError(f"expansion mismatch: {lhs!r} vs {rhs!r}")
    k0sq = t["k0"] * t["k0"]
    if not k0sq.is_zero():
        raise AssertionError("k0^2 should vanish monomial-wise")
    return {
        "name": "gamma1-expansion",
        "status": "exact",
        "normal_form": repr(lhs),
    }
