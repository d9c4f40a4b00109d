"""Cobar complex of a truncated-polynomial Hopf algebra on nine generators.

The algebra has generators g_{i,j} (i in {1,2,3}, j in Z/3) of height p
(exponents < p), with coproduct

    Delta(g_{i,j}) = sum_{k=0}^{i} g_{k,j} (x) g_{i-k, (k+j) mod 3},   g_{0,*} = 1.

Monomials are 9-tuples of exponents; a power t1^e for e < p^3 is encoded by
its base-p digits across g_{1,0}, g_{1,1}, g_{1,2} (and similarly for t2, t3).
The cobar differential is the alternating sum of reduced-coproduct slot
insertions; the concatenation product satisfies the graded Leibniz rule.

Sectors are keyed by (internal degree mod 2(p^3-1), weight); both are
preserved by the differential, and every tensor in a sector of weight w has
at most w slots, so enumerating tensors of total weight <= W yields complete
towers for all sectors with w <= W.
"""

from __future__ import annotations

from math import comb, factorial

from .cohomology import SectorTower
from .exterior import GENERATORS, InhomogeneousError, Trigrade
from .fplinalg import binom_over_p
from .massey import massey_from_system

UNIT = (0,) * 9


class SectorCapError(RuntimeError):
    pass


class TruncatedHopf:
    """Shared coproduct/degree data at a fixed prime."""

    def __init__(self, p: int = 7):
        self.p = p
        self.tmod = 2 * (p**3 - 1)
        self.gen_tdeg = tuple((2 * (p**i - 1) * p**j) % self.tmod for (i, j) in GENERATORS)
        self.gen_weight = tuple(i for (i, _) in GENERATORS)
        self._gen_coproduct = []
        for idx, (i, j) in enumerate(GENERATORS):
            terms = {}
            for k in range(i + 1):
                left = UNIT if k == 0 else self._gen_monomial(k, j)
                right = UNIT if k == i else self._gen_monomial(i - k, (k + j) % 3)
                terms[(left, right)] = terms.get((left, right), 0) + 1
            self._gen_coproduct.append(terms)
        self._power_cache = {}
        self._mon_coproduct_cache = {}

    @staticmethod
    def _gen_monomial(i, j):
        m = [0] * 9
        m[3 * (i - 1) + (j % 3)] = 1
        return tuple(m)

    # -- monomial arithmetic -------------------------------------------------

    def mon_mul(self, a, b):
        """Product of two monomials, or None when truncated away."""
        out = tuple(x + y for x, y in zip(a, b))
        return None if any(e >= self.p for e in out) else out

    def mon_tdeg(self, m):
        return sum(e * d for e, d in zip(m, self.gen_tdeg)) % self.tmod

    def mon_weight(self, m):
        return sum(e * w for e, w in zip(m, self.gen_weight))

    def power_monomial(self, row: int, e: int):
        """t_row^e encoded by base-p digits across g_{row,0..2}; e < p^3."""
        if not 0 <= e < self.p**3:
            raise ValueError(f"exponent {e} out of range")
        m = [0] * 9
        for j in range(3):
            e, digit = divmod(e, self.p)
            m[3 * (row - 1) + j] = digit
        return tuple(m)

    # -- coproduct -----------------------------------------------------------

    def _tensor_mul(self, A, B):
        out = {}
        for (l1, r1), c1 in A.items():
            for (l2, r2), c2 in B.items():
                l = self.mon_mul(l1, l2)
                if l is None:
                    continue
                r = self.mon_mul(r1, r2)
                if r is None:
                    continue
                key = (l, r)
                out[key] = out.get(key, 0) + c1 * c2
        return {k: v % self.p for k, v in out.items() if v % self.p}

    def _gen_power_coproduct(self, idx, e):
        key = (idx, e)
        if key not in self._power_cache:
            if e == 0:
                out = {(UNIT, UNIT): 1}
            else:
                out = self._tensor_mul(self._gen_power_coproduct(idx, e - 1), self._gen_coproduct[idx])
            self._power_cache[key] = out
        return self._power_cache[key]

    def coproduct(self, m):
        if m not in self._mon_coproduct_cache:
            out = {(UNIT, UNIT): 1}
            for idx, e in enumerate(m):
                if e:
                    out = self._tensor_mul(out, self._gen_power_coproduct(idx, e))
            self._mon_coproduct_cache[m] = out
        return self._mon_coproduct_cache[m]

    def reduced_coproduct(self, m):
        out = dict(self.coproduct(m))
        for key in ((m, UNIT), (UNIT, m)):
            out[key] = out.get(key, 0) - 1
        return {k: v % self.p for k, v in out.items() if v % self.p}

    def check_coassociativity(self):
        """(Delta x 1)Delta = (1 x Delta)Delta on every generator."""
        for idx in range(9):
            lhs = {}
            rhs = {}
            for (a, b), c in self._gen_coproduct[idx].items():
                for (a1, a2), c2 in self.coproduct(a).items():
                    key = (a1, a2, b)
                    lhs[key] = (lhs.get(key, 0) + c * c2) % self.p
                for (b1, b2), c2 in self.coproduct(b).items():
                    key = (a, b1, b2)
                    rhs[key] = (rhs.get(key, 0) + c * c2) % self.p
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                return False
        return True

    def check_counit(self):
        """Both counit composites are the identity on every generator."""
        for idx in range(9):
            g = [0] * 9
            row = idx // 3 + 1
            g[idx] = 1
            g = tuple(g)
            left = {}
            right = {}
            for (a, b), c in self._gen_coproduct[idx].items():
                if a == UNIT:
                    left[b] = (left.get(b, 0) + c) % self.p
                if b == UNIT:
                    right[a] = (right.get(a, 0) + c) % self.p
            if {k: v for k, v in left.items() if v} != {g: 1}:
                return False
            if {k: v for k, v in right.items() if v} != {g: 1}:
                return False
        return True

    # -- element constructors ------------------------------------------------

    def zero(self):
        return CobarElement(self, {})

    def one(self):
        return CobarElement(self, {(): 1})

    def slot(self, m):
        if m == UNIT:
            raise ValueError("slots must be reduced (nonzero) monomials")
        return CobarElement(self, {(m,): 1})

    def gen_slot(self, i, j):
        return self.slot(self._gen_monomial(i, j))

    def t_power_slot(self, row, e):
        return self.slot(self.power_monomial(row, e))


class CobarElement:
    """F_p-linear combination of tensors of reduced monomials."""

    __slots__ = ("hopf", "terms")

    def __init__(self, hopf: TruncatedHopf, terms):
        self.hopf = hopf
        self.terms = {k: v % hopf.p for k, v in terms.items() if v % hopf.p}

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = (out.get(k, 0) + v) % self.hopf.p
        return CobarElement(self.hopf, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CobarElement(self.hopf, {k: -v for k, v in self.terms.items()})

    def __rmul__(self, scalar):
        if isinstance(scalar, int):
            return CobarElement(self.hopf, {k: scalar * v for k, v in self.terms.items()})
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return self.__rmul__(other)
        out = {}
        p = self.hopf.p
        for sa, ca in self.terms.items():
            for sb, cb in other.terms.items():
                key = sa + sb
                out[key] = (out.get(key, 0) + ca * cb) % p
        return CobarElement(self.hopf, out)

    def __eq__(self, other):
        return (
            isinstance(other, CobarElement)
            and self.hopf.p == other.hopf.p
            and self.terms == other.terms
        )

    def is_zero(self):
        return not self.terms

    def d(self):
        hopf = self.hopf
        out = {}
        for slots, coeff in self.terms.items():
            for i, m in enumerate(slots):
                sign = -1 if i % 2 == 0 else 1  # (-1)^(i+1) for 1-based slot i+1
                for (a, b), c in hopf.reduced_coproduct(m).items():
                    key = slots[:i] + (a, b) + slots[i + 1 :]
                    out[key] = (out.get(key, 0) + sign * coeff * c) % hopf.p
        return CobarElement(hopf, out)

    def grades(self):
        hopf = self.hopf
        out = set()
        for slots in self.terms:
            t = sum(hopf.mon_tdeg(m) for m in slots) % hopf.tmod
            w = sum(hopf.mon_weight(m) for m in slots)
            out.add(Trigrade(len(slots), t, w))
        return out

    def grade_of(self):
        gs = self.grades()
        if len(gs) != 1:
            raise InhomogeneousError(gs)
        return next(iter(gs))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for slots, coeff in sorted(self.terms.items()):
            body = "|".join(
                "*".join(f"g{i}{j}^{e}" if e > 1 else f"g{i}{j}"
                         for (i, j), e in zip(GENERATORS, m) if e)
                for m in slots
            )
            parts.append(f"{coeff}[{body}]")
        return " + ".join(parts)


def b_class(hopf: TruncatedHopf, level: int, k: int) -> CobarElement:
    """The standard 2-cochain b-classes.

    level 1: sum_i (1/p) C(p^(k+1), i) [t1^i | t1^(p^(k+1)-i)].
    level 2: sum over a+b+c = p^(k+1) (corners excluded) of
             (1/p) (p^(k+1); a,b,c) [t2^a t1^b | t1^(pb) t2^c].
    """
    p = hopf.p
    n = p ** (k + 1)
    terms = {}
    if level == 1:
        for i in range(1, n):
            c = binom_over_p(k, i, p)
            if c:
                key = (hopf.power_monomial(1, i), hopf.power_monomial(1, n - i))
                terms[key] = c
    elif level == 2:
        for a in range(n + 1):
            for b in range(n + 1 - a):
                c = n - a - b
                if (a, b, c) in ((n, 0, 0), (0, n, 0), (0, 0, n)):
                    continue
                mult = factorial(n) // (factorial(a) * factorial(b) * factorial(c))
                coeff = (mult // p) % p
                if not coeff:
                    continue
                left = hopf.mon_mul(hopf.power_monomial(2, a), hopf.power_monomial(1, b))
                right = hopf.mon_mul(hopf.power_monomial(1, p * b), hopf.power_monomial(2, c))
                if left is None or right is None:
                    raise ValueError("b-class term leaves the truncated basis")
                key = (left, right)
                terms[key] = (terms.get(key, 0) + coeff) % p
    else:
        raise ValueError(f"unsupported level {level}")
    return CobarElement(hopf, terms)


class CobarEngine:
    """Sector towers of the cobar complex, truncated by total weight."""

    def __init__(self, p: int = 7, weight_bound: int = 6, sector_cap: int = 20000):
        self.p = p
        self.alg = TruncatedHopf(p)
        self.weight_bound = weight_bound
        self.sector_cap = sector_cap
        self._sector_bases = {}
        self._towers = {}
        self._enumerate()

    def _monomials_by_weight(self):
        """All reduced monomials of weight <= bound, grouped by weight."""
        out = {}
        hopf = self.alg

        def rec(idx, m, w):
            if idx == 9:
                if w:
                    out.setdefault(w, []).append(tuple(m))
                return
            row = hopf.gen_weight[idx]
            for e in range(min(self.p - 1, (self.weight_bound - w) // row) + 1):
                m[idx] = e
                rec(idx + 1, m, w + e * row)
            m[idx] = 0

        rec(0, [0] * 9, 0)
        return out

    def _enumerate(self):
        hopf = self.alg
        monw = self._monomials_by_weight()
        self._sector_bases[(0, 0)] = {0: [()]}
        tensors = [((), 0, 0)]  # (slots, tdeg, weight)
        frontier = [((), 0, 0)]
        while frontier:
            nxt = []
            for slots, t, w in frontier:
                for dw, mons in monw.items():
                    if w + dw > self.weight_bound:
                        continue
                    for m in mons:
                        item = (slots + (m,), (t + hopf.mon_tdeg(m)) % hopf.tmod, w + dw)
                        nxt.append(item)
            tensors.extend(nxt)
            frontier = nxt
        for slots, t, w in tensors:
            if (t, w) == (0, 0):
                continue
            bucket = self._sector_bases.setdefault((t, w), {})
            bucket.setdefault(len(slots), []).append(slots)
        for key, bucket in self._sector_bases.items():
            for s, basis in bucket.items():
                if len(basis) > self.sector_cap:
                    raise SectorCapError(
                        f"sector {key} degree {s} has {len(basis)} basis tensors "
                        f"(cap {self.sector_cap})"
                    )
                basis.sort()

    def sector_keys(self):
        return sorted(self._sector_bases)

    def tower(self, t: int, w: int) -> SectorTower:
        key = (t % self.alg.tmod, w)
        if key not in self._towers:
            if w > self.weight_bound:
                raise ValueError(f"sector weight {w} exceeds bound {self.weight_bound}")
            bases = self._sector_bases.get(key, {})

            def d_of(s, slots, _hopf=self.alg):
                dx = CobarElement(_hopf, {slots: 1}).d()
                return dict(dx.terms)

            self._towers[key] = SectorTower(self.p, bases, d_of)
        return self._towers[key]

    def to_vec(self, x: CobarElement, sector: Trigrade):
        tower = self.tower(sector.t, sector.w)
        idx = tower.index.get(sector.s, {})
        vec = [0] * len(idx)
        for slots, c in x.terms.items():
            vec[idx[slots]] = c
        return vec

    def from_vec(self, vec, sector: Trigrade) -> CobarElement:
        tower = self.tower(sector.t, sector.w)
        basis = tower.bases.get(sector.s, [])
        return CobarElement(self.alg, {k: c for k, c in zip(basis, vec) if c})

    def reduce(self, x: CobarElement):
        sector = x.grade_of()
        tower = self.tower(sector.t, sector.w)
        return sector, tuple(tower.reduce_vec(sector.s, self.to_vec(x, sector)))


def collapse_check(p: int = 7, smax: int = 2, wmax: int = 3, sector_cap: int = 20000):
    """Compare cobar cohomology dims against the exterior model, s <= smax,
    weight <= wmax.  In this range the polynomial b-classes (weight p) do not
    contribute, so the prediction is exactly the exterior dimensions."""
    from .cohomology import ExteriorCohomology

    cob = CobarEngine(p, weight_bound=wmax, sector_cap=sector_cap)
    ext = ExteriorCohomology(p)
    ext_dims = {}
    for (t, w) in ext.sector_keys():
        if w > wmax:
            continue
        tower = ext.tower(t, w)
        for s in tower.bases:
            if s <= smax:
                d = tower.dim_h(s)
                if d:
                    ext_dims[(s, t, w)] = d
    rows = []
    mismatches = []
    seen = set()
    for (t, w) in cob.sector_keys():
        tower = cob.tower(t, w)
        for s in sorted(tower.bases):
            if s > smax:
                continue
            dim_c = tower.dim_h(s)
            dim_e = ext_dims.get((s, t, w), 0)
            seen.add((s, t, w))
            if dim_c or dim_e:
                rows.append({"s": s, "t": t, "w": w, "cobar": dim_c, "predicted": dim_e})
            if dim_c != dim_e:
                mismatches.append((s, t, w, dim_c, dim_e))
    for key, d in ext_dims.items():
        if key not in seen:
            mismatches.append((*key, 0, d))
    return {"rows": rows, "mismatches": mismatches}


def euler_report(engine: CobarEngine):
    """Per-sector Euler characteristics, cochains vs cohomology."""
    out = []
    for (t, w) in engine.sector_keys():
        tower = engine.tower(t, w)
        chi_c = sum((-1) ** s * tower.dim(s) for s in tower.bases)
        chi_h = sum((-1) ** s * tower.dim_h(s) for s in tower.bases)
        out.append({"t": t, "w": w, "chi_cochains": chi_c, "chi_cohomology": chi_h,
                    "equal": chi_c == chi_h})
    return out


def p_fold_massey_check(p: int = 5, k: int = 0, engine: CobarEngine | None = None):
    """Explicit p-fold bracket <x, ..., x> for x = [t1^(p^k)].

    The defining system a_{i,i+m} = ((-1)^(m+1)/m!) [t1^(m p^k)] satisfies
    every identity exactly, and the value equals b_class(1, k) on the nose;
    the value's class is then certified nonzero in its sector tower.
    """
    if engine is None:
        engine = CobarEngine(p, weight_bound=p)
    hopf = engine.alg

    class _Model:
        name = f"cobar(p={p})"

        def __init__(self):
            self.p = p
            self.engine = engine

        def zero(self):
            return hopf.zero()

        def sector_of(self, x):
            return x.grade_of()

        def bar(self, x):
            if x.is_zero():
                return x
            s = x.grade_of().s
            return x if (1 + s) % 2 == 0 else (-1) * x

    model = _Model()
    entries = {}
    for i in range(p + 1):
        for j in range(i + 1, p + 1):
            m = j - i
            if m >= p:
                continue
            c = ((-1) ** (m + 1) * pow(factorial(m), p - 2, p)) % p
            entries[(i, j)] = c * hopf.t_power_slot(1, m * p**k)
    value = massey_from_system(model, entries, p)
    target = b_class(hopf, 1, k)
    if not (value - target).is_zero():
        raise AssertionError(f"p-fold bracket value {value!r} != b-class {target!r}")
    sector, coords = engine.reduce(value)
    if not any(coords):
        raise AssertionError("p-fold bracket value is a coboundary")
    return {
        "name": f"p-fold bracket, p={p}, k={k}",
        "status": "pass",
        "value": repr(value),
        "sector": tuple(sector),
        "coords": list(coords),
    }
