"""Re-derivation of the two calculi from the general commutation ansatz.

The coordinate/differential relations are written with unknown coefficients
A, B, F11, F12, F21, F22 and the differential/derivative relations with
A11..B22.  Consistency turns into small polynomial systems over the Laurent
ring.  They are triangular apart from one product equation, so a case split
plus linear back-substitution (dividing only by units) solves them exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Iterable, Mapping, Sequence

from .algebra import Expr, Gen
from .laurent import ONE, P, Q, Laurent
from .rewrite import CalculusType, RewriteRule, RuleSet, shared_rules

Monomial = tuple[str, ...]


class SolverError(ValueError):
    pass


class Poly:
    """Polynomial in named unknowns with Laurent coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Laurent] | None = None):
        out: dict[Monomial, Laurent] = {}
        for m, c in (terms or {}).items():
            m = tuple(sorted(m))
            c = Laurent.coerce(c)
            out[m] = out[m] + c if m in out else c
        self._terms = {m: c for m, c in out.items() if c}

    @classmethod
    def var(cls, name: str) -> Poly:
        return cls({(name,): ONE})

    @classmethod
    def const(cls, c) -> Poly:
        return cls({(): Laurent.coerce(c)})

    @property
    def terms(self) -> dict[Monomial, Laurent]:
        return dict(self._terms)

    def unknowns(self) -> set[str]:
        return {v for m in self._terms for v in m}

    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return self.degree() == 0

    def constant(self) -> Laurent:
        return self._terms.get((), Laurent())

    def coeff(self, mono: Monomial) -> Laurent:
        return self._terms.get(tuple(sorted(mono)), Laurent())

    def __add__(self, other) -> Poly:
        other = other if isinstance(other, Poly) else Poly.const(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> Poly:
        other = other if isinstance(other, Poly) else Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return Poly.const(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = Laurent.coerce(other)
            return Poly({m: v * c for m, v in self._terms.items()})
        out: dict[Monomial, Laurent] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def subs(self, values: Mapping[str, Poly | Laurent]) -> Poly:
        out = Poly()
        for m, c in self._terms.items():
            term = Poly.const(c)
            for v in m:
                if v in values:
                    val = values[v]
                    term = term * (val if isinstance(val, Poly) else Poly.const(val))
                else:
                    term = term * Poly.var(v)
            out = out + term
        return out

    def map_coeffs(self, fn) -> Poly:
        return Poly({m: fn(c) for m, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        return NotImplemented

    def __repr__(self) -> str:
        if not self._terms:
            return "Poly(0)"
        parts = [f"({c})*{'*'.join(m)}" if m else f"({c})"
                 for m, c in sorted(self._terms.items())]
        return "Poly(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class Equation:
    label: str
    poly: Poly   # the equation reads poly == 0


@dataclass(frozen=True)
class ConstraintSystem:
    unknowns: tuple[str, ...]
    equations: tuple[Equation, ...]

    def substitute_parameters(self, p=(1, 0), q=(0, 1)) -> ConstraintSystem:
        eqs = tuple(Equation(e.label, e.poly.map_coeffs(lambda c: c.substitute(p=p, q=q)))
                    for e in self.equations)
        return ConstraintSystem(self.unknowns, eqs)

    def residuals(self, values: Mapping[str, Laurent]) -> dict[str, Poly]:
        return {e.label: e.poly.subs(values) for e in self.equations}

    def is_satisfied_by(self, values: Mapping[str, Laurent]) -> bool:
        return all(r.is_zero() for r in self.residuals(values).values())


@dataclass(frozen=True)
class AnsatzCoefficients:
    A: Laurent
    B: Laurent
    F11: Laurent
    F12: Laurent
    F21: Laurent
    F22: Laurent

    def as_dict(self) -> dict[str, Laurent]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class DiffDerivCoefficients:
    A11: Laurent
    A12: Laurent
    A21: Laurent
    A22: Laurent
    B11: Laurent
    B12: Laurent
    B21: Laurent
    B22: Laurent

    def as_dict(self) -> dict[str, Laurent]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _eq(label: str, lhs, rhs) -> Equation:
    return Equation(label, lhs - rhs)


def build_f_constraints() -> ConstraintSystem:
    """Conditions on A, B, F_ij from nilpotency, d and the ΘΦ relation."""
    A, B, F11, F12, F21, F22 = (Poly.var(n) for n in ("A", "B", "F11", "F12", "F21", "F22"))
    eqs = (
        _eq("A = 1", A, 1),
        _eq("B = 1", B, 1),
        _eq("F22 + p*F11 = 1", F22 + F11 * P, 1),
        _eq("F21 + p*F12 = p", F21 + F12 * P, P),
        _eq("F12*F22 = 0", F12 * F22, 0),
        _eq("F11*F21 = 1 - F12 - F22", F11 * F21, 1 - F12 - F22),
        _eq("F11 = q*(1 - F12)", F11, (1 - F12) * Q),
        _eq("F21 = q^-1*(1 - F22)", F21, (1 - F22) * Q ** -1),
    )
    return ConstraintSystem(("A", "B", "F11", "F12", "F21", "F22"), eqs)


def build_ab_constraints(branch: AnsatzCoefficients) -> ConstraintSystem:
    """Linear conditions on the differential/derivative coefficients for one branch."""
    names = ("A11", "A12", "A21", "A22", "B11", "B12", "B21", "B22")
    A11, A12, A21, A22, B11, B12, B21, B22 = (Poly.var(n) for n in names)
    F11, F12, F21, F22 = branch.F11, branch.F12, branch.F21, branch.F22
    eqs = (
        _eq("A11 = 1", A11, 1),
        _eq("A22 = 0", A22, 0),
        _eq("B21 = 1", B21, 1),
        _eq("B12 = 0", B12, 0),
        _eq("F11*A21 + F12*A12 = 1", A21 * F11 + A12 * F12, 1),
        _eq("F21*A12 + F22*A21 = 0", A12 * F21 + A21 * F22, 0),
        _eq("F21*B11 + F22*B22 = 1", B11 * F21 + B22 * F22, 1),
        _eq("F11*B22 + F12*B11 = 0", B22 * F11 + B11 * F12, 0),
    )
    return ConstraintSystem(names, eqs)


# -- solver -------------------------------------------------------------------

def solve_system(cs: ConstraintSystem) -> list[dict[str, Laurent]]:
    """All solutions, found by case-splitting product equations ``x*y = 0``.

    Order of work: single-unknown linear equations, then product splits, then
    linear equations in several unknowns.  Every solution is checked against
    the original equations before it is returned.
    """
    raw = _solve([e.poly for e in cs.equations], cs.unknowns, {})
    solutions: list[dict[str, Laurent]] = []
    for sol in raw:
        if not cs.is_satisfied_by(sol):
            raise SolverError(f"internal error: {sol} does not satisfy the system")
        if sol not in solutions:
            solutions.append(sol)
    if not solutions:
        raise SolverError("no solution")
    return solutions


def _solve(eqs: list[Poly], unknowns: Sequence[str], fixed: dict[str, Poly]) -> list[dict[str, Laurent]]:
    eqs = [e.subs(fixed) for e in eqs]
    eqs = [e for e in eqs if not e.is_zero()]
    if any(e.is_constant() for e in eqs):
        return []  # nonzero constant: this branch is inconsistent
    if not eqs:
        free = [u for u in unknowns if u not in fixed]
        if free:
            raise SolverError(f"underdetermined: {', '.join(free)} unconstrained")
        return [{u: fixed[u].constant() for u in unknowns}]

    linear = [e for e in eqs if e.degree() == 1]
    for single in (True, False):
        candidates = [e for e in linear if (len(e.unknowns()) == 1) == single]
        for e in sorted(candidates, key=lambda e: len(e.unknowns())):
            for u in sorted(e.unknowns(), key=unknowns.index):
                c = e.coeff((u,))
                if c.is_unit():
                    value = -(e - Poly({(u,): c})) * c.inverse()
                    new = {k: v.subs({u: value}) for k, v in fixed.items()}
                    new[u] = value
                    return _solve(eqs, unknowns, new)
        if single:
            for e in eqs:
                if len(e.terms) == 1 and e.degree() == 2:
                    (mono,) = e.terms
                    out = []
                    for u in dict.fromkeys(mono):
                        new = {k: v.subs({u: Poly()}) for k, v in fixed.items()}
                        new[u] = Poly()
                        out.extend(_solve(eqs, unknowns, new))
                    return out
    if linear:
        raise SolverError("back-substitution would divide by a non-monomial coefficient")
    raise SolverError("system is neither linear nor split by a product equation")


def solve_f(cs: ConstraintSystem | None = None) -> list[AnsatzCoefficients]:
    cs = cs or build_f_constraints()
    return [AnsatzCoefficients(**sol) for sol in solve_system(cs)]


def solve_ab(branch: AnsatzCoefficients) -> DiffDerivCoefficients:
    sols = solve_system(build_ab_constraints(branch))
    if len(sols) != 1:
        raise SolverError(f"expected a unique solution, found {len(sols)}")
    return DiffDerivCoefficients(**sols[0])


def solved_branches() -> dict[CalculusType, tuple[AnsatzCoefficients, DiffDerivCoefficients]]:
    """Both branches in order: the F12 = 0 split is type I, F22 = 0 is type II."""
    f1, f2 = solve_f()
    return {CalculusType.TYPE_I: (f1, solve_ab(f1)), CalculusType.TYPE_II: (f2, solve_ab(f2))}


# -- rule sets from coefficients ----------------------------------------------

def ruleset_from_ansatz(f: AnsatzCoefficients, dd: DiffDerivCoefficients,
                        calculus_type: CalculusType | None = None) -> RuleSet:
    """Insert coefficients into the general ansatz templates."""
    T, F, t, ph, dt, df = Gen.Theta, Gen.Phi, Gen.theta, Gen.phi, Gen.d_theta, Gen.d_phi
    w = Expr.word
    templates = [
        ((t, T), f.A * w(T, t)),
        ((t, F), f.F11 * w(F, t) + f.F12 * w(T, ph)),
        ((ph, F), f.B * w(F, ph)),
        ((ph, T), f.F21 * w(T, ph) + f.F22 * w(F, t)),
        ((dt, t), 1 - w(t, dt) - f.F12 * w(ph, df)),
        ((dt, ph), -f.F21 * w(ph, dt)),
        ((df, ph), 1 - w(ph, df) - f.F22 * w(t, dt)),
        ((df, t), -f.F11 * w(t, df)),
        ((dt, T), dd.A11 * w(T, dt) + dd.A12 * w(F, df)),
        ((dt, F), dd.A21 * w(F, dt) + dd.A22 * w(T, df)),
        ((df, T), dd.B11 * w(T, df) + dd.B12 * w(F, dt)),
        ((df, F), dd.B21 * w(F, df) + dd.B22 * w(T, dt)),
    ]
    rules = shared_rules() + [RewriteRule(lhs, rhs) for lhs, rhs in templates]
    return RuleSet(rules, calculus_type)


def swap_parameters(c: Laurent) -> Laurent:
    """The substitution (p, q) -> (1/q, 1/p) that exchanges the two branches."""
    return c.substitute(p=(0, -1), q=(-1, 0))


def branch_table(branches: Iterable[tuple[AnsatzCoefficients, DiffDerivCoefficients]]) -> list[dict]:
    return [{**f.as_dict(), **dd.as_dict()} for f, dd in branches]
