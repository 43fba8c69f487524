"""Degreewise computation of the canonical subring, its presentation, and
the pluricanonical-map verifications.

Everything reduces to exact linear algebra on graded pieces of S/f: the
descent condition is a kernel, generators and relations are greedy
complements inside those kernels, and the map checks are rank computations
on products of fixed elements.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Optional, Sequence

from .instance import Instance
from .linalg import Number, SpanBuilder, kernel_basis, membership, rank_of, rref
from .poly import Monomial, Poly, WeightedRing, evaluate, format_poly, parse_poly


def rational_text(c: Number) -> str:
    """Canonical n/d rendering; the denominator is omitted when it is 1."""
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _strip(beta: Sequence[int]) -> tuple[int, ...]:
    """Drop trailing zeros so cache keys survive appending new generators."""
    out = list(beta)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class _ProductCache:
    """Normal forms of monomial products of a fixed (growable) element list."""

    def __init__(self, quotient, elements: list[Poly]):
        self.quotient = quotient
        self.elements = elements
        self.cache: dict[tuple[int, ...], Poly] = {(): quotient.ambient.one()}

    def get(self, beta: Sequence[int]) -> Poly:
        key = _strip(beta)
        got = self.cache.get(key)
        if got is None:
            i = len(key) - 1
            prev = self.get(key[:i] + (key[i] - 1,))
            got = self.quotient.normal_form(prev * self.elements[i])
            self.cache[key] = got
        return got


class _ExtensionElement:
    """Element of Q[t]/(mu) for a monic minimal polynomial mu."""

    __slots__ = ("coeffs", "mod")

    def __init__(self, coeffs: Sequence[Number], mod: tuple):
        deg = len(mod) - 1
        work = list(coeffs)
        for i in range(len(work) - 1, deg - 1, -1):
            c = work[i]
            if c:
                for j, mc in enumerate(mod[:-1]):
                    work[i - deg + j] -= c * mc
            work.pop()
        while len(work) < deg:
            work.append(0)
        self.coeffs = tuple(work)
        self.mod = mod

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "_ExtensionElement") -> "_ExtensionElement":
        return _ExtensionElement([a + b for a, b in zip(self.coeffs, other.coeffs)], self.mod)

    def __mul__(self, other) -> "_ExtensionElement":
        if isinstance(other, (int, Fraction)):
            return _ExtensionElement([other * c for c in self.coeffs], self.mod)
        deg = len(self.mod) - 1
        prod = [0] * (2 * deg - 1) if deg > 0 else [0]
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return _ExtensionElement(prod, self.mod)

    def __rmul__(self, other) -> "_ExtensionElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented


@dataclass
class GeneratorSet:
    generators: list[tuple[Poly, int]]
    source: str

    def degrees(self) -> list[int]:
        return [d for _, d in self.generators]

    def polynomials(self) -> list[Poly]:
        return [p for p, _ in self.generators]


@dataclass
class RelationSet:
    ring: WeightedRing
    relations: list[tuple[Poly, int]]
    horizon: int

    def degrees(self) -> list[int]:
        return [d for _, d in self.relations]

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees():
            out[d] = out.get(d, 0) + 1
        return out


class Pipeline:
    """All graded computations for one instance, with shared caches.

    Work that is independent per degree may run on a thread pool; results
    are assembled in input order, so output never depends on the schedule.
    """

    def __init__(self, instance: Instance, max_degree: int = 12, jobs: int = 1):
        if max_degree < 2:
            raise ValueError("max_degree must be at least 2")
        self.instance = instance
        self.max_degree = max_degree
        self.jobs = max(1, jobs)
        self.quotient = instance.quotient
        self.ring = instance.ring
        self._descend: dict[int, list[list[Fraction]]] = {}
        self._descend_polys: dict[int, list[Poly]] = {}
        self._image_powers: dict[tuple[int, int], object] = {}
        self._computed: Optional[GeneratorSet] = None
        self._reference: Optional[GeneratorSet] = None
        self._reference_cache: Optional[_ProductCache] = None
        self._relations: Optional[RelationSet] = None
        self._tring: Optional[WeightedRing] = None

    def _pmap(self, fn: Callable, items: Sequence) -> list:
        if self.jobs <= 1 or len(items) <= 1:
            return [fn(x) for x in items]
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            return list(pool.map(fn, items))

    # -- the descent condition ------------------------------------------

    def _image_power(self, i: int, e: int):
        key = (i, e)
        got = self._image_powers.get(key)
        if got is None:
            if e == 0:
                got = self.instance.curve.one()
            else:
                got = self._image_power(i, e - 1) * self.instance.residue.images[i]
            self._image_powers[key] = got
        return got

    def _residue_vector(self, mono: Monomial, d: int) -> list[Number]:
        elt = self.instance.curve.one()
        for i, e in enumerate(mono):
            if e:
                elt = elt * self._image_power(i, e)
        return elt.coordinate_vector(d)

    def descend_space(self, m: int) -> list[list[Fraction]]:
        """Reduced basis of the degree-m piece, as vectors over the
        monomial basis of the quotient."""
        if m < 0:
            raise ValueError("degree must be nonnegative")
        cached = self._descend.get(m)
        if cached is not None:
            return cached
        basis = self.quotient.degree_basis(m)
        n = len(basis)
        width = self.instance.curve.graded_dimension(m)
        cols = [self._residue_vector(mono, m) for mono in basis]
        for tvec in self.instance.tau.basis_vectors(m):
            cols.append([-x for x in tvec])
        rows = [[col[r] for col in cols] for r in range(width)]
        kern = kernel_basis(rows, len(cols))
        cvecs = [v[:n] for v in kern]
        if cvecs:
            red = rref(cvecs, n)
            vecs = [row[:] for row in red.rows[: red.rank]]
        else:
            vecs = []
        self._descend[m] = vecs
        return vecs

    def descend_dimension(self, m: int) -> int:
        return len(self.descend_space(m))

    def descend_polys(self, m: int) -> list[Poly]:
        cached = self._descend_polys.get(m)
        if cached is None:
            cached = [self.quotient.from_vector(m, v).content_normalized()
                      for v in self.descend_space(m)]
            self._descend_polys[m] = cached
        return cached

    def precompute_descend(self, degrees: Optional[Sequence[int]] = None):
        if degrees is None:
            degrees = range(self.max_degree + 1)
        todo = [m for m in degrees if m not in self._descend]
        self._pmap(self.descend_space, todo)

    # -- generators ------------------------------------------------------

    def minimal_generators(self) -> GeneratorSet:
        """Greedy degree-by-degree complement of the product span."""
        if self._computed is not None:
            return self._computed
        self.precompute_descend()
        gens: list[tuple[Poly, int]] = []
        cache = _ProductCache(self.quotient, [])
        for m in range(2, self.max_degree + 1):
            vectors = self.descend_space(m)
            if not vectors:
                continue
            width = len(self.quotient.degree_basis(m))
            span = SpanBuilder(width)
            if gens:
                wring = WeightedRing([f"g{i}" for i in range(len(gens))],
                                     [d for _, d in gens])
                for beta in wring.monomials(m):
                    if sum(beta) >= 2:
                        span.insert(self.quotient.coefficient_vector(cache.get(beta), m))
            for vec in vectors:
                if span.insert(vec) is not None:
                    poly = self.quotient.from_vector(m, vec).content_normalized()
                    gens.append((poly, m))
                    cache.elements.append(poly)
        self._computed = GeneratorSet(gens, "computed")
        return self._computed

    def reference_generators(self) -> GeneratorSet:
        if self._reference is None:
            self._reference = GeneratorSet(list(self.instance.reference_generators),
                                           "reference")
        return self._reference

    def _reference_products(self) -> _ProductCache:
        if self._reference_cache is None:
            self._reference_cache = _ProductCache(
                self.quotient, self.reference_generators().polynomials())
        return self._reference_cache

    def _generator_ring(self, gens: GeneratorSet) -> WeightedRing:
        return WeightedRing([f"g{i}" for i in range(len(gens.generators))],
                            gens.degrees())

    def verify_reference(self) -> dict:
        """Membership of each listed generator plus graded spanning checks."""
        self.precompute_descend()
        gens = self.reference_generators()
        members = []
        for idx, (poly, d) in enumerate(gens.generators):
            vec = self.quotient.coefficient_vector(poly, d)
            ok = membership(vec, self.descend_space(d)) is not None
            members.append({"index": idx, "degree": d,
                            "polynomial": format_poly(poly), "member": ok})
        cache = self._reference_products()
        wring = self._generator_ring(gens)
        spans = []
        for m in range(2, self.max_degree + 1):
            width = len(self.quotient.degree_basis(m))
            descend = self.descend_space(m)
            inside = SpanBuilder(width)
            for vec in descend:
                inside.insert(vec)
            outside = False
            products = SpanBuilder(width)
            for beta in wring.monomials(m):
                if sum(beta) >= 1:
                    vec = self.quotient.coefficient_vector(cache.get(beta), m)
                    if inside.insert(vec) is not None:
                        outside = True
                    products.insert(vec)
            spans.append({"degree": m, "product_rank": products.rank,
                          "dimension": len(descend),
                          "spans": (not outside) and products.rank == len(descend)})
        ok = all(e["member"] for e in members) and all(e["spans"] for e in spans)
        return {"members": members, "spans": spans, "ok": ok}

    # -- relations -------------------------------------------------------

    def presentation_ring(self) -> WeightedRing:
        if self._tring is None:
            count = len(self.reference_generators().generators)
            self._tring = WeightedRing([f"T{i + 1}" for i in range(count)],
                                       self.reference_generators().degrees())
        return self._tring

    def relations(self) -> RelationSet:
        """Minimal relations against the reference generator list."""
        if self._relations is not None:
            return self._relations
        tring = self.presentation_ring()
        cache = self._reference_products()
        degrees = list(range(4, self.max_degree + 1))

        def kernel_for(m: int):
            monos = tring.monomials(m)
            cols = [self.quotient.coefficient_vector(cache.get(beta), m)
                    for beta in monos]
            dim = len(self.quotient.degree_basis(m))
            rows = [[col[r] for col in cols] for r in range(dim)]
            return kernel_basis(rows, len(monos))

        kernels = dict(zip(degrees, self._pmap(kernel_for, degrees)))
        rels: list[tuple[Poly, int]] = []
        for m in degrees:
            monos = tring.monomials(m)
            index = {mono: i for i, mono in enumerate(monos)}
            span = SpanBuilder(len(monos))
            for rpoly, rdeg in rels:
                for gamma in tring.monomials(m - rdeg):
                    shifted = Poly(tring, {gamma: 1}) * rpoly
                    vec: list[Number] = [0] * len(monos)
                    for mono, c in shifted.coeffs.items():
                        vec[index[mono]] = c
                    span.insert(vec)
            for kvec in kernels[m]:
                if span.insert(kvec) is not None:
                    poly = Poly(tring, {mono: c for mono, c in zip(monos, kvec)})
                    rels.append((poly.content_normalized(), m))
        self._relations = RelationSet(tring, rels, self.max_degree)
        return self._relations

    def relation_defects(self) -> list[int]:
        """Indices of relations that fail the independent substitution check."""
        rels = self.relations()
        gens = self.reference_generators().polynomials()
        bad = []
        for i, (rpoly, _) in enumerate(rels.relations):
            value = evaluate(rpoly, gens, self.ring.zero(), self.ring.one())
            if not self.quotient.normal_form(value).is_zero:
                bad.append(i)
        return bad

    # -- Hilbert consistency --------------------------------------------

    def expected_dimension(self, m: int) -> int:
        inv = self.instance.expected.get("surface_invariants", {})
        k2 = inv.get("K2", 1)
        chi = inv.get("chi", 1)
        p_g = inv.get("p_g", 0)
        if m == 0:
            return 1
        if m == 1:
            return p_g
        return chi + m * (m - 1) // 2 * k2

    def hilbert_consistency(self) -> list[dict]:
        """Triple per degree: solver dimension, invariant expectation, and
        the presentation count #monomials - dim(ideal slice)."""
        self.precompute_descend()
        rels = self.relations()
        tring = rels.ring

        def presentation_dimension(m: int) -> int:
            monos = tring.monomials(m)
            index = {mono: i for i, mono in enumerate(monos)}
            span = SpanBuilder(len(monos))
            for rpoly, rdeg in rels.relations:
                if rdeg > m:
                    continue
                for gamma in tring.monomials(m - rdeg):
                    shifted = Poly(tring, {gamma: 1}) * rpoly
                    vec: list[Number] = [0] * len(monos)
                    for mono, c in shifted.coeffs.items():
                        vec[index[mono]] = c
                    span.insert(vec)
            return len(monos) - span.rank

        ms = list(range(self.max_degree + 1))
        pres = dict(zip(ms, self._pmap(presentation_dimension, ms)))
        out = []
        for m in ms:
            a = self.descend_dimension(m)
            b = self.expected_dimension(m)
            c = pres[m]
            out.append({"degree": m, "descend": a, "expected": b,
                        "presentation": c, "agree": a == b == c})
        return out

    # -- tricanonical ----------------------------------------------------

    def tricanonical(self) -> dict:
        """Kernel of the cubic-monomial evaluation in degree 9, matched
        against the bundled reference form over all variable assignments."""
        inst = self.instance
        zring = inst.tricanonical_ring
        nvars = zring.n
        gammas = [self.reference_generators().generators[i][0]
                  for i in inst.tricanonical_indices]
        gdeg = self.reference_generators().generators[inst.tricanonical_indices[0]][1]
        cache = _ProductCache(self.quotient, gammas)

        def kernel_for(d: int):
            monos = zring.monomials(d)
            cols = [self.quotient.coefficient_vector(cache.get(beta), gdeg * d)
                    for beta in monos]
            dim = len(self.quotient.degree_basis(gdeg * d))
            rows = [[col[r] for col in cols] for r in range(dim)]
            return kernel_basis(rows, len(monos))

        degrees = list(range(1, 10))
        kernels = dict(zip(degrees, self._pmap(kernel_for, degrees)))
        dims = {d: len(kernels[d]) for d in degrees}
        report: dict = {"kernel_dimensions": dims,
                        "lower_degrees_injective": all(dims[d] == 0 for d in range(1, 9)),
                        "kernel_dimension_nine": dims[9]}
        if dims[9] != 1:
            report["status"] = "FAIL"
            return report
        monos = zring.monomials(9)
        vec = kernels[9][0]
        form = Poly(zring, {mono: c for mono, c in zip(monos, vec)})
        lead = form.leading_coefficient()
        form = form.scale(Fraction(1) / Fraction(lead))
        report["computed_form"] = format_poly(form)

        reference = inst.tricanonical_reference.content_normalized()
        matches = []
        for sigma in permutations(range(nvars)):
            permuted = Poly(zring, {tuple(mono[sigma[i]] for i in range(nvars)): c
                                    for mono, c in form.coeffs.items()})
            if permuted.content_normalized() == reference:
                matches.append(sigma)
        if not matches:
            report["status"] = "FAIL"
            report["assignment"] = None
            return report
        sigma = min(matches)
        assigned = [gammas[sigma[i]] for i in range(nvars)]
        matched = Poly(zring, {tuple(mono[sigma[i]] for i in range(nvars)): c
                               for mono, c in form.coeffs.items()}).content_normalized()
        substituted = evaluate(matched, assigned, self.ring.zero(), self.ring.one())
        vanishes = self.quotient.normal_form(substituted).is_zero
        report["assignment"] = list(sigma)
        report["form"] = format_poly(matched)
        report["substitution_vanishes"] = vanishes
        report["status"] = "OK" if (report["lower_degrees_injective"] and vanishes) else "FAIL"
        return report

    # -- four-canonical --------------------------------------------------

    def fourcanonical(self, d_max: int = 5) -> dict:
        """Hilbert function of the quartic subalgebra and its second
        differences."""
        if d_max < 4:
            raise ValueError("d_max must be at least 4")
        quartics = self.descend_polys(4)
        qring = WeightedRing([f"q{i}" for i in range(len(quartics))],
                             [1] * len(quartics))
        cache = _ProductCache(self.quotient, quartics)

        def rank_for(d: int) -> int:
            monos = qring.monomials(d)
            width = len(self.quotient.degree_basis(4 * d))
            vectors = [self.quotient.coefficient_vector(cache.get(beta), 4 * d)
                       for beta in monos]
            return rank_of(vectors, width)

        degrees = list(range(1, d_max + 1))
        ranks = dict(zip(degrees, self._pmap(rank_for, degrees)))
        h = {0: 1}
        h.update(ranks)
        second = {d: h[d] - 2 * h[d - 1] + h[d - 2] for d in range(3, d_max + 1)}
        return {"h": h, "second_differences": second,
                "quartic_count": len(quartics)}

    # -- base locus ------------------------------------------------------

    def _witness_valid(self, cfg: dict, gens: list[Poly]) -> bool:
        tring = WeightedRing(["t"], [1])
        mu = parse_poly(cfg["extension_minimal_polynomial"], tring)
        deg = max(m[0] for m in mu.coeffs)
        lead = mu.coeffs.get((deg,), 0)
        mod = [Fraction(mu.coeffs.get((i,), 0)) / Fraction(lead) for i in range(deg + 1)]
        modt = tuple(mod)
        coords = []
        for text in cfg["point"]:
            p = parse_poly(text, tring)
            coords.append(_ExtensionElement(
                [p.coeffs.get((i,), 0) for i in range(max(m[0] for m in p.coeffs) + 1)]
                if p.coeffs else [0], modt))
        if all(c.is_zero for c in coords):
            return False
        zero = _ExtensionElement([0], modt)
        one = _ExtensionElement([1], modt)
        for g in gens + [self.quotient.modulus]:
            if not evaluate(g, coords, zero, one).is_zero:
                return False
        return True

    def base_locus(self, m: int) -> dict:
        """EMPTY via pure-power certificates, NONEMPTY via a verified
        witness point, otherwise UNDECIDED at the degree bound."""
        if m < 2:
            raise ValueError("m must be at least 2")
        gens = self.descend_polys(m)
        names = self.ring.names
        bound = self.instance.base_locus_bound
        witness_cfg = self.instance.base_locus_witnesses.get(m)

        if witness_cfg is not None:
            if not self._witness_valid(witness_cfg, gens):
                return {"verdict": "UNDECIDED", "bound": bound,
                        "note": "stated witness failed exact verification"}
            ev_bound = self.instance.nonempty_evidence_bound
            found = self._power_search(gens, m, [0], ev_bound)
            return {
                "verdict": "NONEMPTY",
                "witness": {"minimal_polynomial": witness_cfg["extension_minimal_polynomial"],
                            "point": list(witness_cfg["point"]), "verified": True},
                "evidence": {"variable": names[0], "bound": ev_bound,
                             "pure_power_found": 0 in found},
            }

        found = self._power_search(gens, m, list(range(self.ring.n)), bound)
        missing = [names[i] for i in range(self.ring.n) if i not in found]
        if missing:
            return {"verdict": "UNDECIDED", "bound": bound, "missing": missing}
        certificates = []
        for i in range(self.ring.n):
            power, degree, combination = found[i]
            certificates.append({"variable": names[i], "power": power,
                                 "degree": degree, "combination": combination})
        return {"verdict": "EMPTY", "bound": bound, "certificates": certificates}

    def _power_search(self, gens: list[Poly], m: int, targets: list[int],
                      bound: int) -> dict[int, tuple]:
        """Scan ideal slices for pure powers of the target variables.

        Returns {variable index: (power, degree, combination)}; the
        combination replays as a polynomial identity modulo the modulus.
        """
        weights = self.ring.weights
        found: dict[int, tuple] = {}
        remaining = set(targets)
        for d in range(m, bound + 1):
            if not remaining:
                break
            checkable = [i for i in remaining if d % weights[i] == 0]
            if not checkable:
                continue
            products = []
            vectors = []
            width = len(self.quotient.degree_basis(d))
            span = SpanBuilder(width)
            for gi, g in enumerate(gens):
                for bmono in self.quotient.degree_basis(d - m):
                    prod = self.quotient.normal_form(Poly(self.ring, {bmono: 1}) * g)
                    vec = self.quotient.coefficient_vector(prod, d)
                    products.append((bmono, gi))
                    vectors.append(vec)
                    span.insert(vec)
            for i in checkable:
                k = d // weights[i]
                mono = tuple(k if j == i else 0 for j in range(self.ring.n))
                target = self.quotient.coefficient_vector(Poly(self.ring, {mono: 1}), d)
                if span.contains(target):
                    coeffs = membership(target, vectors)
                    if coeffs is None:
                        continue
                    combination = []
                    for c, (bmono, gi) in zip(coeffs, products):
                        if c:
                            combination.append({
                                "coefficient": rational_text(c),
                                "monomial": format_poly(Poly(self.ring, {bmono: 1})),
                                "generator": gi,
                            })
                    found[i] = (k, d, combination)
                    remaining.discard(i)
        return found

    # -- assembled document ---------------------------------------------

    def export_presentation(self, include_relations: Optional[bool] = None) -> dict:
        """Full machine-readable report over every pipeline stage.

        Relations need the full degree horizon, so they are skipped when
        max_degree sits below 10; forcing them on anyway is an error.
        """
        if include_relations is None:
            include_relations = self.max_degree >= 10
        if include_relations and self.max_degree < 10:
            raise ValueError("relation verification needs max degree at least 10")
        computed = self.minimal_generators()
        reference_report = self.verify_reference()
        rels = self.relations() if include_relations else None
        hilbert = self.hilbert_consistency()
        tri = self.tricanonical()
        four = self.fourcanonical()
        base = {f"m{m}": self.base_locus(m) for m in (2, 3, 5)}
        doc = {
            "instance": self.instance.name,
            "max_degree": self.max_degree,
            "generators": {
                "computed": {
                    "degrees": computed.degrees(),
                    "polynomials": [format_poly(p) for p in computed.polynomials()],
                },
                "reference": {
                    "degrees": self.reference_generators().degrees(),
                    "polynomials": [format_poly(p) for p
                                    in self.reference_generators().polynomials()],
                    "verified": reference_report["ok"],
                },
            },
            "relations": {
                "counts": {str(d): c for d, c in sorted(rels.counts().items())},
                "total": len(rels.relations),
                "horizon": rels.horizon,
                "polynomials": [format_poly(p) for p, _ in rels.relations],
            } if rels is not None else {
                "status": "SKIPPED",
                "reason": "max degree below 10",
            },
            "hilbert": hilbert,
            "codimension": len(computed.generators) - 3,
            "tricanonical": {key: tri.get(key) for key in
                             ("assignment", "form", "kernel_dimensions",
                              "substitution_vanishes", "status")},
            "base_locus": base,
            "fourcanonical_second_differences":
                [four["second_differences"][d] for d in sorted(four["second_differences"])],
        }
        doc["tricanonical"]["kernel_dimensions"] = {
            str(d): v for d, v in tri["kernel_dimensions"].items()}
        return doc
