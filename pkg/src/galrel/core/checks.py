"""
Verification handler: runs one family of checks over every relation of a
Galois extension and turns the outcomes into report rows.
"""

import itertools
import logging
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Set, Tuple

import sympy
from mpmath import mp

from galrel.arakelov.relations import (
    RelationResidual,
    check_brauer_identity,
    check_genus_relation,
    check_residue_relation,
)
from galrel.config.constants import (
    CHECKS,
    DEFAULT_BRAUER_TOL,
    DEFAULT_ETA_TOL,
    DEFAULT_RESIDUAL_TOL,
    DEFAULT_ZETA_BOUND,
    DEFAULT_ZETA_SIGMA,
    PROVENANCE_COMPUTED,
    VARIANT_TRACE,
)
from galrel.core.extension import GaloisExtension
from galrel.errors import InputError, UnsupportedError
from galrel.exact.certified import csum
from galrel.fields.torsion import nu_valuation
from galrel.groups.finite_group import Subgroup
from galrel.groups.group_algebra import IdempotentRelation
from galrel.ideals.galois_action import (
    galois_action_on_classes,
    idempotent_trace_on_classgroup,
)
from galrel.ideals.transfer import transfer_check
from galrel.ideals.zeta import zeta_partial
from galrel.models.report_model import ReportRow
from galrel.theta.eta import eta
from galrel.theta.metric import (
    b_divisor,
    canonical_variant,
    infinite_divisor,
    pullback_infinite,
)
from galrel.theta.traces import check_change_metric, eta_relation_residual, trace_eta

logger = logging.getLogger(__name__)

# sample elements per subfield for the change-of-metric identity
CHANGE_METRIC_SAMPLES = 20


def _sample_vectors(dimension: int, count: int) -> Iterator[Tuple[int, ...]]:
    """Nonzero small integer vectors, shortest first, deterministic."""
    produced = 0
    for bound in itertools.count(1):
        for v in itertools.product(range(-bound, bound + 1), repeat=dimension):
            if max(abs(x) for x in v) != bound:
                continue
            yield v
            produced += 1
            if produced >= count:
                return


class VerificationHandler:
    """Runs the checks of ``galrel verify`` on one extension."""

    def __init__(
        self,
        ext: GaloisExtension,
        prime: Optional[int] = None,
        level: Optional[int] = None,
        variant: str = VARIANT_TRACE,
        tol: Optional[float] = None,
        sigma: Any = DEFAULT_ZETA_SIGMA,
        bound: int = DEFAULT_ZETA_BOUND,
    ) -> None:
        variant = canonical_variant(variant)
        if prime is not None and not sympy.isprime(prime):
            raise InputError(f"{prime} is not prime", "prime")
        if level is not None and level < 1:
            raise InputError("Level must be at least 1", "level")
        self.ext = ext
        self.prime = prime
        self.level = level
        self.variant = variant
        self.tol = tol
        self.sigma = Fraction(sigma)
        self.bound = bound
        self.residuals: Dict[str, Any] = {}
        self._seen: Set[Tuple[str, Tuple[int, ...], int, int]] = set()

    @property
    def checks(self) -> Dict[str, Callable[[IdempotentRelation], List[ReportRow]]]:
        return {
            "lambda": self.check_lambda,
            "classgroup": self.check_classgroup,
            "torsion": self.check_torsion,
            "genus": self.check_genus,
            "brauer": self.check_brauer,
            "zeta": self.check_zeta,
            "eta": self.check_eta,
        }

    def run(self, check: str) -> List[ReportRow]:
        """All rows of ``check`` over the relation basis of the extension.

        Raises:
            InputError: unknown check name
            UnsupportedError: a needed invariant is outside the supported range
        """
        if check not in CHECKS:
            raise InputError(f"Unknown check '{check}'", "check")
        relations = self.ext.relations
        if not relations:
            return [
                ReportRow(
                    check,
                    self.ext.name,
                    {"relations": 0},
                    passed=None,
                    note=f"{self.ext.group.name} has no idempotent relations",
                )
            ]
        rows: List[ReportRow] = []
        for rel in relations:
            rows.extend(self.checks[check](rel))
        if check == "eta":
            rows.extend(self.eta_self_checks())
        logger.info(
            "%s on %s: %d rows, %d failed",
            check,
            self.ext.name,
            len(rows),
            sum(row.passed is False for row in rows),
        )
        return rows

    # -- helpers -----------------------------------------------------

    def _tolerance(self, default: float) -> float:
        return self.tol if self.tol is not None else default

    def _tame_primes(self, candidates: Set[int]) -> List[int]:
        """The requested prime, or the candidates prime to |Gal(L/K)|.

        Raises:
            UnsupportedError: the requested prime divides |Gal(L/K)|
        """
        order = self.ext.base.order
        if self.prime is not None:
            if order % self.prime == 0:
                raise UnsupportedError(
                    "wild case unsupported", f"p = {self.prime} divides {order}"
                )
            return [self.prime]
        return sorted(p for p in candidates if order % p)

    def _residual_row(
        self, result: RelationResidual, tol: float, note: str = ""
    ) -> ReportRow:
        self.residuals[f"{result.check}: {result.relation}"] = result.residual
        values: Dict[str, Any] = {
            "residual": result.residual,
            "terms": [
                {"H": t.subgroup, "field": t.field_name, "n": t.coefficient, **t.values}
                for t in result.terms
            ],
        }
        provenance = {
            f"{t.subgroup}.{k}": v
            for t in result.terms
            for k, v in t.provenance.items()
        }
        if result.second_route is not None:
            values["second_route"] = result.second_route
        if result.hypothesis is not None:
            values["coprime_hypothesis"] = result.hypothesis
        return ReportRow(
            result.check,
            result.relation,
            values,
            provenance,
            result.within(tol),
            note,
        )

    # -- checks ------------------------------------------------------

    def check_lambda(self, rel: IdempotentRelation) -> List[ReportRow]:
        """Σ r_H λ_H = 0 for the unit ranks λ_H of L^H."""
        terms = []
        total = 0
        for h, n in rel.terms():
            r, s, rank = self.ext.signature_data(h)
            terms.append({"H": h.label(), "n": n, "r": r, "s": s, "lambda": rank})
            total += n * rank
        return [
            ReportRow(
                "lambda",
                str(rel),
                {"sum": total, "terms": terms},
                {"lambda": PROVENANCE_COMPUTED},
                total == 0,
            )
        ]

    def check_classgroup(self, rel: IdempotentRelation) -> List[ReportRow]:
        """Σ r_H λ_{H,p,n} = 0, ε_H traces on Cl(L)_p, and the transfers."""
        support = rel.terms()
        groups = {h.elements: self.ext.class_group(h) for h, _ in support}
        top = self.ext.class_group(self.ext.subgroups[0])
        candidates = {p for cl in groups.values() for p in cl.structure.primes()}
        candidates |= set(top.structure.primes())
        rows: List[ReportRow] = []
        for p in self._tame_primes(candidates):
            tables = {key: cl.structure.p_part(p) for key, cl in groups.items()}
            deepest = max((n for t in tables.values() for n in t), default=1)
            levels = [self.level] if self.level else range(1, deepest + 1)
            for n in levels:
                terms = [
                    {"H": h.label(), "r": r, "lambda": tables[h.elements].get(n, 0)}
                    for h, r in support
                ]
                total = sum(t["r"] * t["lambda"] for t in terms)
                rows.append(
                    ReportRow(
                        "classgroup",
                        f"{rel} p={p} n={n}",
                        {
                            "sum": total,
                            "terms": terms,
                            "Cl": {
                                h.label(): str(groups[h.elements].structure)
                                for h, _ in support
                            },
                        },
                        {"Cl": PROVENANCE_COMPUTED},
                        total == 0,
                    )
                )
                rows.extend(self._trace_rows(support, top, tables, p, n))
            rows.extend(self._transfer_rows(support, top, p))
        if not rows:
            rows.append(
                ReportRow(
                    "classgroup",
                    str(rel),
                    {"primes": []},
                    passed=None,
                    note="no tame prime divides a class number",
                )
            )
        return rows

    def _trace_rows(
        self,
        support: List[Tuple[Subgroup, int]],
        top: Any,
        tables: Dict[Tuple[int, ...], Dict[int, int]],
        p: int,
        n: int,
    ) -> List[ReportRow]:
        rows = []
        matrices = None
        for h, _ in support:
            key = ("trace", h.elements, p, n)
            if key in self._seen:
                continue
            self._seen.add(key)
            if matrices is None:
                matrices = galois_action_on_classes(top, self.ext.automorphisms)
            trace = idempotent_trace_on_classgroup(top, matrices, h.elements, p, n)
            expected = tables[h.elements].get(n, 0) % p**n
            rows.append(
                ReportRow(
                    "classgroup.trace",
                    f"{h.label()} p={p} n={n}",
                    {"trace": trace, "lambda": tables[h.elements].get(n, 0)},
                    {"trace": PROVENANCE_COMPUTED},
                    trace == expected,
                    f"tr(ε_H) on level {n} of Cl(L)_{p} mod {p**n}",
                )
            )
        return rows

    def _transfer_rows(
        self, support: List[Tuple[Subgroup, int]], top: Any, p: int
    ) -> List[ReportRow]:
        rows = []
        for h, _ in support:
            key = ("transfer", h.elements, p, 0)
            if h.is_trivial() or key in self._seen:
                continue
            self._seen.add(key)
            sub = self.ext.subfield(h)
            for row in transfer_check(sub, top, self.ext.class_group(h), [p]):
                rows.append(
                    ReportRow(
                        "transfer",
                        f"{h.label()} {row.subject} p={row.p}",
                        {"identity": row.identity},
                        passed=row.passed,
                        note=row.note,
                    )
                )
        return rows

    def check_torsion(self, rel: IdempotentRelation) -> List[ReportRow]:
        """Σ r_H ν(H,p) = 0 for p prime to |Gal(L/K)|."""
        support = rel.terms()
        ws = {h.elements: self.ext.torsion(h)[0] for h, _ in support}
        candidates = {p for w in ws.values() for p in sympy.primefactors(w)}
        rows = []
        for p in self._tame_primes(candidates):
            terms = [
                {
                    "H": h.label(),
                    "r": r,
                    "w": ws[h.elements],
                    "nu": nu_valuation(
                        self.ext.subfield(h).field, p, w=ws[h.elements]
                    ),
                }
                for h, r in support
            ]
            total = sum(t["r"] * t["nu"] for t in terms)
            rows.append(
                ReportRow(
                    "torsion",
                    f"{rel} p={p}",
                    {"sum": total, "terms": terms},
                    {"w": PROVENANCE_COMPUTED},
                    total == 0,
                )
            )
        return rows

    def check_genus(self, rel: IdempotentRelation) -> List[ReportRow]:
        result = check_genus_relation(self.ext, rel)
        note = "" if result.hypothesis else "gcd(|H|, w_L) > 1 for some H"
        return [self._residual_row(result, self._tolerance(DEFAULT_RESIDUAL_TOL), note)]

    def check_brauer(self, rel: IdempotentRelation) -> List[ReportRow]:
        """Class number relation and the residue relation, with provenance."""
        tol = self._tolerance(DEFAULT_BRAUER_TOL)
        return [
            self._residual_row(check_brauer_identity(self.ext, rel), tol),
            self._residual_row(check_residue_relation(self.ext, rel), tol),
        ]

    def check_zeta(self, rel: IdempotentRelation) -> List[ReportRow]:
        """|Σ r_H log ζ_{L^H}(σ; N)| against the summed tail estimates."""
        terms = []
        logs = []
        allowance = []
        bits = self.ext.field.places()[0].precision
        for h, n in rel.terms():
            partial = zeta_partial(
                self.ext.subfield(h).field, self.sigma, self.bound, bits
            )
            with mp.workprec(bits):
                logs.append(partial.value.log() * n)
                allowance.append(partial.log_uncertainty() * abs(n))
            terms.append(
                {"H": h.label(), "n": n, "zeta": partial.value, "tail": partial.tail}
            )
        with mp.workprec(bits):
            total = csum(logs)
            budget = csum(allowance)
        self.residuals[f"zeta: {rel}"] = total
        passed = bool(abs(total.value) <= budget.upper() + total.radius)
        return [
            ReportRow(
                "zeta",
                str(rel),
                {
                    "sum_log": total,
                    "tail_allowance": budget,
                    "sigma": self.sigma,
                    "N": self.bound,
                    "terms": terms,
                },
                {"zeta": PROVENANCE_COMPUTED},
                passed,
                "truncated Dirichlet series",
            )
        ]

    def check_eta(self, rel: IdempotentRelation) -> List[ReportRow]:
        """Σ n_H η_{B(H)}(L^H): reported, never failed; the two routes must agree."""
        tol = self._tolerance(DEFAULT_ETA_TOL)
        result = eta_relation_residual(self.ext, rel, self.variant, tol)
        self.residuals[f"eta[{self.variant}]: {rel}"] = result.residual
        terms = [
            {
                "H": t.subgroup,
                "field": t.field_name,
                "n": t.coefficient,
                **t.eta.to_dict(),
            }
            for t in result.terms
        ]
        return [
            ReportRow(
                "eta",
                str(rel),
                {
                    "residual": result.residual,
                    "diagnostic": result.diagnostic,
                    "variant": self.variant,
                    "terms": terms,
                },
                {"eta": PROVENANCE_COMPUTED},
                None,
                "residual reported without a verdict",
            ),
            ReportRow(
                "eta.routes",
                str(rel),
                {
                    "direct": result.residual,
                    "grouped": result.grouped,
                    "points": result.points,
                },
                passed=result.routes_agree(),
                note=f"direct and grouped evaluation within 2·{tol:g}",
            ),
        ]

    def eta_self_checks(self) -> List[ReportRow]:
        """Change of metric and the trace of the theta operator, per subgroup."""
        tol = self._tolerance(DEFAULT_ETA_TOL)
        rows = []
        base = set(self.ext.base.elements)
        for h in self.ext.subgroups:
            if not set(h.elements) <= base:
                continue
            rows.append(self._change_metric_row(h))
            via_top = trace_eta(self.ext, h, None, tol)
            sub = self.ext.subfield(h)
            direct = eta(sub.field, b_divisor(sub.field, h.order, VARIANT_TRACE), tol)
            with mp.workprec(self.ext.field.places()[0].precision):
                gap = via_top.enclosure() - direct.enclosure()
            rows.append(
                ReportRow(
                    "eta.trace",
                    h.label(),
                    {"trace": via_top.value, "twisted_eta": direct.value},
                    passed=gap.within(2 * tol),
                    note="trace over L^H against η_{B_trace(H)}(L^H)",
                )
            )
        return rows

    def _change_metric_row(self, h: Subgroup) -> ReportRow:
        sub = self.ext.subfield(h)
        places = sub.field.places()
        twist = infinite_divisor(
            sub.field, [Fraction(i + 1, 3) for i in range(len(places))]
        )
        divisors = [None, pullback_infinite(sub, twist)]
        failures = 0
        checked = 0
        for v in _sample_vectors(sub.degree, CHANGE_METRIC_SAMPLES):
            x = sub.field.from_basis(v)
            for divisor in divisors:
                left, right = check_change_metric(self.ext, h, divisor, x)
                checked += 1
                failures += not left.overlaps(right)
        return ReportRow(
            "eta.change_metric",
            h.label(),
            {"samples": checked, "mismatches": failures},
            passed=failures == 0,
            note="||ι(x)||²_{L,D} = |H|·||x||²_{L^H,D^H}",
        )
