"""Every verification the package offers, as uniform pass/fail records.

Each ``*_check`` function returns a :class:`Check` whose ``details`` are plain
JSON-ready data, so the command line and the test-suite share one code path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

from .algebra import Expr, word_key
from .ansatz import solved_branches, ruleset_from_ansatz
from .covariance import QGNormalizer, check_covariance, classical_point
from .fock import I4, anticommutators, build_rep, max_entry, symbolic_residuals, verify_osc_relations
from .laurent import Laurent
from .rewrite import (CalculusType, RuleSet, build_ruleset, check_confluence, check_consistency,
                      classical_ruleset)
from .rmatrix import (LMatrix, check_r_form_calculus, hat, r_of, rtt_relations,
                      transpose_inverse_check, transpose_inverse_mismatch, ybe_check)
from .sampling import random_expr, random_q
from .syntax import expr_to_json, format_expr, format_laurent, format_word, laurent_to_json, parse_expr

FOCK_SAMPLES = (2j, 0.5 + 0.5j, 3 + 0j)


@dataclass
class Check:
    family: str
    name: str
    ok: bool
    details: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {"family": self.family, "name": self.name, "ok": self.ok, "details": self.details}


def _text(e: Expr) -> str:
    return format_expr(e)


# -- ansatz ----------------------------------------------------------------------

# expected coefficient tables for the two branches, typed in by hand
REFERENCE_COEFFICIENTS = {
    CalculusType.TYPE_I: {
        "A": "1", "B": "1", "F11": "q", "F12": "0", "F21": "p", "F22": "1 - p*q",
        "A11": "1", "A12": "1 - p^-1*q^-1", "A21": "q^-1", "A22": "0",
        "B11": "p^-1", "B12": "0", "B21": "1", "B22": "0",
    },
    CalculusType.TYPE_II: {
        "A": "1", "B": "1", "F11": "p^-1", "F12": "1 - p^-1*q^-1", "F21": "q^-1", "F22": "0",
        "A11": "1", "A12": "0", "A21": "p", "A22": "0",
        "B11": "q", "B12": "0", "B21": "1", "B22": "1 - p*q",
    },
}


def _scalar(text: str) -> Laurent:
    e = parse_expr(text)
    return e.coeff(()) if not e.is_zero() else Laurent()


def ansatz_check() -> Check:
    branches = solved_branches()
    out = []
    ok = len(branches) == 2
    for ct, (f, dd) in branches.items():
        coeffs = {**f.as_dict(), **dd.as_dict()}
        expected = {k: _scalar(v) for k, v in REFERENCE_COEFFICIENTS[ct].items()}
        matches = coeffs == expected
        rebuilt = ruleset_from_ansatz(f, dd, ct) == build_ruleset(ct)
        ok = ok and matches and rebuilt
        out.append({"type": ct.label,
                    "coefficients": {k: format_laurent(v) for k, v in coeffs.items()},
                    "coefficient_terms": {k: laurent_to_json(v) for k, v in coeffs.items()},
                    "matches_reference": matches, "rebuilds_rule_set": rebuilt})
    return Check("ansatz", "two branches", ok, {"branches": out})


# -- rewriting ---------------------------------------------------------------------

def consistency_check(ct: CalculusType, rs: RuleSet | None = None, theta_Phi_sign: int = 1) -> Check:
    report = check_consistency(rs if rs is not None else build_ruleset(ct, theta_Phi_sign=theta_Phi_sign))
    groups: dict[str, int] = {}
    for item in report.items:
        groups[item.group] = groups.get(item.group, 0) + 1
    name = f"type {ct.label}" + ("" if theta_Phi_sign == 1 else " (minus-sign variant)")
    return Check("consistency", name, report.ok, {
        "checked": len(report.items), "groups": groups,
        "failures": [{"group": i.group, "name": i.name, "residual": _text(i.residual)}
                     for i in report.failures]})


def confluence_check(ct: CalculusType, theta_Phi_sign: int = 1) -> Check:
    report = check_confluence(build_ruleset(ct, theta_Phi_sign=theta_Phi_sign))
    name = f"type {ct.label}" + ("" if theta_Phi_sign == 1 else " (minus-sign variant)")
    return Check("confluence", name, report.ok, {
        "overlaps_checked": report.overlaps_checked,
        "failures": [{"word": format_word(w), "left": _text(a), "right": _text(b)}
                     for w, a, b in report.failures]})


def erratum_check() -> Check:
    """The type II rule with the opposite sign on its Θφ term must break confluence."""
    variant = confluence_check(CalculusType.TYPE_II, theta_Phi_sign=-1)
    return Check("confluence", "minus-sign variant fails", not variant.ok, variant.details)


# -- R-matrices --------------------------------------------------------------------

def ybe_check_for(ct: CalculusType) -> Check:
    report = ybe_check(r_of(ct))
    return Check("ybe", f"type {ct.label}", report.ok, {
        "plain": report.plain_ybe, "braid": report.braid_ybe,
        "nonzero_entries": {k: len(v) for k, v in report.residuals.items()}})


def rform_check(ct: CalculusType) -> Check:
    report = check_r_form_calculus(ct)
    families = [{"name": f.name, "ok": f.ok, "scaling": f.scaling,
                 "relations": [{"label": c.label, "ok": c.ok, "note": c.note} for c in f.checks]}
                for f in report.families]
    return Check("r-form", f"type {ct.label}", report.ok,
                 {"scalings": report.scalings, "families": families})


def transpose_inverse_remark_check() -> Check:
    at_equal = transpose_inverse_check(set_p_equal_q=True)
    generic = transpose_inverse_check(set_p_equal_q=False)
    mismatch = [{"row": i, "col": j, "difference": format_laurent(c)}
                for i, j, c in transpose_inverse_mismatch(set_p_equal_q=False)]
    return Check("transpose-inverse", "R_I = (R_II^-1)^T at p = q", at_equal and not generic,
                 {"p_equal_q": at_equal, "generic": generic, "generic_mismatch": mismatch})


def rtt_check(ct: CalculusType) -> Check:
    qg = rtt_relations(hat(r_of(ct)))
    normalizer = QGNormalizer.from_relations(qg)
    return Check("rtt", f"type {ct.label}", len(qg.relations) == 6 and normalizer.confluent, {
        "relations": [_text(r) for r in qg.relations],
        "relation_terms": [expr_to_json(r) for r in qg.relations],
        "rules": [{"lhs": format_word(r.lhs), "rhs": _text(r.rhs)} for r in qg.ruleset],
        "confluent": normalizer.confluent})


def covariance_check(ct: CalculusType) -> Check:
    report = check_covariance(ct)
    control = check_covariance(ct, qg=QGNormalizer.commutative())
    return Check("covariance", f"type {ct.label}", report.ok and not control.ok, {
        "relations": [{"relation": i.name, "ok": i.passed, "residual": str(i.residual)}
                      for i in report.items],
        "commutative_control_nonzero": len(control.failures)})


# -- Fock space ---------------------------------------------------------------------

def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def fock_check(ct: CalculusType, q_val: complex) -> Check:
    rep = build_rep(ct, q_val)
    report = verify_osc_relations(rep)
    agreement = symbolic_residuals(rep)
    agrees = all(a.agrees for a in agreement)
    return Check("fock", f"type {ct.label} q={q_val.real:g}{q_val.imag:+g}i",
                 report.ok() and agrees, {
                     "q": _pair(rep.q_val), "p": _pair(rep.p_val),
                     "max_residual": report.max_residual,
                     "per_relation": [{"relation": n, "residual": v} for n, v in report.per_relation],
                     "symbolic_agreement": agrees})


def fock_unit_circle_check(seed: int = 0, samples: int = 5) -> Check:
    """|q| = 1 means pq = 1: both anticommutators become the identity."""
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        q = random_q(rng, 1.0, 1.0)
        for ct in CalculusType:
            for m in anticommutators(build_rep(ct, q)).values():
                worst = max(worst, max_entry(m - I4))
    return Check("fock", "unit circle gives canonical anticommutators", worst < 1e-12,
                 {"samples": samples, "max_deviation": worst})


def fock_annulus_check(seed: int = 0, samples: int = 20) -> Check:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        q = random_q(rng)
        for ct in CalculusType:
            worst = max(worst, verify_osc_relations(build_rep(ct, q)).max_residual)
    return Check("fock", "random q on 0.1 <= |q| <= 10", worst < 1e-12,
                 {"samples": samples, "max_residual": worst})


# -- classical limit and parser -------------------------------------------------------

ONE_POINT = {"p": (0, 0), "q": (0, 0)}


def _is_commutator(e: Expr) -> bool:
    """e = yx - xy for two letters x < y."""
    if len(e.terms) != 2:
        return False
    low, high = sorted(e.terms, key=word_key)
    return high == low[::-1] and e == Expr.word(*high) - Expr.word(*low)


def classical_limit_check() -> Check:
    details = {}
    ok = True
    for ct in CalculusType:
        rules = classical_point(build_ruleset(ct)) == classical_ruleset()
        rmat = r_of(ct).substitute(**ONE_POINT) == LMatrix.identity(4)
        rels = [r.substitute(**ONE_POINT) for r in rtt_relations(hat(r_of(ct))).relations]
        commutators = all(_is_commutator(r) for r in rels)
        ok = ok and rules and rmat and commutators
        details[ct.label] = {"rule_set_classical": rules, "r_matrix_identity": rmat,
                             "rtt_commutators": commutators}
    return Check("classical-limit", "p = q = 1", ok, details)


def roundtrip_check(seed: int = 0, samples: int = 200) -> Check:
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        e = random_expr(rng)
        text = format_expr(e)
        if parse_expr(text) != e:
            bad.append(text)
    return Check("parser", "print/parse round trip", not bad,
                 {"samples": samples, "seed": seed, "failures": bad[:5]})


def all_checks(seed: int = 0) -> list[Check]:
    types = list(CalculusType)
    checks = [ansatz_check()]
    checks += [consistency_check(ct) for ct in types]
    checks += [confluence_check(ct) for ct in types] + [erratum_check()]
    checks += [ybe_check_for(ct) for ct in types]
    checks += [rform_check(ct) for ct in types] + [transpose_inverse_remark_check()]
    checks += [rtt_check(ct) for ct in types] + [covariance_check(ct) for ct in types]
    checks += [fock_check(ct, q) for ct in types for q in FOCK_SAMPLES]
    checks += [fock_unit_circle_check(seed), fock_annulus_check(seed)]
    checks += [classical_limit_check(), roundtrip_check(seed)]
    return checks
