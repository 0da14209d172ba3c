"""Exact rational linear programming.

The solver is a two-phase primal simplex over a dictionary tableau kept in
scaled-integer form: every stored number is the true rational value times
the current denominator (the last pivot element), and each pivot performs
the fraction-free Bareiss update, so no intermediate value is ever rounded
and no per-cell gcd reduction is needed.  Anti-cycling is guaranteed by
switching permanently to the least-index rule after a fixed number of
largest-coefficient pivots; both rules break ties by variable index, so
identical programs always pivot identically.

``strict_feasibility`` decides systems mixing strict and non-strict linear
inequalities by the usual slack trick: give every strict constraint the
same margin variable s, maximize s, and read strict feasibility off the
sign of the optimum (with the unbounded case pinned down at s = 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

_DANTZIG_PIVOT_LIMIT = 200  # pivots before falling back to pure Bland


class LPError(ValueError):
    """Raised for malformed linear programs."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


RELATIONS = ("<=", "==", ">=")


@dataclass
class Constraint:
    form: dict[str, Fraction]
    relation: str
    bound: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise LPError(f"unknown relation {self.relation!r}")
        self.form = {
            v: (c if type(c) is Fraction else Fraction(c))
            for v, c in self.form.items()
            if c != 0
        }
        self.bound = _frac(self.bound)

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        return sum((c * assignment[v] for v, c in self.form.items()), Fraction(0))

    def satisfied_by(self, assignment: Mapping[str, Fraction]) -> bool:
        value = self.evaluate(assignment)
        if self.relation == "<=":
            return value <= self.bound
        if self.relation == ">=":
            return value >= self.bound
        return value == self.bound


@dataclass
class LinearProgram:
    variables: tuple[str, ...]
    constraints: list[Constraint]
    objective: tuple[str, dict[str, Fraction]] | None = None
    nonnegative: frozenset[str] = frozenset()

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise LPError("duplicate variable name")
        declared = set(self.variables)
        for con in self.constraints:
            unknown = set(con.form) - declared
            if unknown:
                raise LPError(f"constraint references unknown variables {sorted(unknown)}")
        if self.objective is not None:
            sense, form = self.objective
            if sense not in ("max", "min"):
                raise LPError(f"unknown objective sense {sense!r}")
            unknown = set(form) - declared
            if unknown:
                raise LPError(f"objective references unknown variables {sorted(unknown)}")
        bad = self.nonnegative - declared
        if bad:
            raise LPError(f"nonnegative flags for unknown variables {sorted(bad)}")


def linear_program(
    variables: Sequence[str],
    constraints: Iterable[tuple],
    objective: tuple[str, Mapping] | None = None,
    nonnegative: Iterable[str] = (),
) -> LinearProgram:
    """Constructor coercing numbers to Fraction.

    Each constraint is a (form, relation, bound) triple with ``form`` a
    mapping from variable name to coefficient and relation one of
    '<=', '==', '>='.
    """
    cons = [Constraint(dict(f), rel, _frac(b)) for f, rel, b in constraints]
    obj = None
    if objective is not None:
        sense, form = objective
        obj = (sense, {v: _frac(c) for v, c in dict(form).items() if c != 0})
    return LinearProgram(tuple(variables), cons, obj, frozenset(nonnegative))


@dataclass(frozen=True)
class LPOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    assignment: dict[str, Fraction] | None = None
    # Indices of original constraints in the certificate support: for an
    # infeasible program these rows alone are already infeasible; for an
    # optimal one they bound the objective.  Only filled on request.
    support: frozenset[int] | None = None


# ---------------------------------------------------------------------------
# simplex core: maximize obj . x  s.t.  rows . x <= rhs,  x >= 0, integer data
# ---------------------------------------------------------------------------


class _Simplex:
    """Dictionary simplex with scaled-integer (fraction-free) pivoting.

    Columns always hold the current nonbasic variables; rows the basic
    ones.  Stored entry / self.den is the true rational value.  Variable
    ids: 0..n-1 structural, n..n+m-1 slacks, n+m the phase-1 artificial.
    """

    def __init__(self, n: int, rows: list[tuple[list[int], int]]):
        self.n = n
        self.m = len(rows)
        self.m0 = len(rows)
        self.den = 1
        self.cols = list(range(n))  # column labels
        self.basis = [n + i for i in range(self.m)]  # row labels (slacks)
        self.rows = [list(coeffs) + [rhs] for coeffs, rhs in rows]
        self.obj: list[int] = [0] * (n + 1)
        self.x0 = n + self.m
        self.pivots = 0

    # -- pivoting ----------------------------------------------------------

    def _pivot(self, r: int, s: int) -> None:
        rows = self.rows
        den = self.den
        prow = rows[r]
        piv = prow[s]
        for i in range(self.m):
            if i == r:
                continue
            row = rows[i]
            f = row[s]
            if f:
                row[:] = [(a * piv - f * b) // den for a, b in zip(row, prow)]
                row[s] = -f
            elif piv != den:
                row[:] = [a * piv // den for a in row]
        orow = self.obj
        f = orow[s]
        if f:
            orow[:] = [(a * piv - f * b) // den for a, b in zip(orow, prow)]
            orow[s] = -f
        elif piv != den:
            orow[:] = [a * piv // den for a in orow]
        prow[s] = den
        self.den = piv
        self.cols[s], self.basis[r] = self.basis[r], self.cols[s]
        if self.den < 0:
            self.den = -self.den
            for row in rows:
                row[:] = [-a for a in row]
            orow[:] = [-a for a in orow]
        self.pivots += 1

    def _ratio_row(self, s: int) -> int | None:
        """Leaving row by minimum ratio, ties broken by basic label."""
        best = None
        best_num = best_den = 0
        rows = self.rows
        basis = self.basis
        for i in range(self.m):
            t = rows[i][s]
            if t <= 0:
                continue
            rhs = rows[i][-1]
            if best is None or rhs * best_den < best_num * t or (
                rhs * best_den == best_num * t and basis[i] < basis[best]
            ):
                best, best_num, best_den = i, rhs, t
        return best

    def _entering(self) -> int | None:
        """Improving column: largest coefficient while young, then Bland."""
        obj = self.obj
        cols = self.cols
        ncols = len(obj) - 1
        if self.pivots < _DANTZIG_PIVOT_LIMIT:
            best = None
            best_val = 0
            for j in range(ncols):
                v = obj[j]
                if v < best_val or (
                    v == best_val and v < 0 and cols[j] < cols[best]
                ):
                    best, best_val = j, v
            return best
        best = None
        for j in range(ncols):
            if obj[j] < 0 and (best is None or cols[j] < cols[best]):
                best = j
        return best

    def _run(self, stop_when_positive: bool = False) -> str:
        while True:
            if stop_when_positive and self.obj[-1] > 0:
                return "positive"
            s = self._entering()
            if s is None:
                return "optimal"
            r = self._ratio_row(s)
            if r is None:
                return "unbounded"
            self._pivot(r, s)

    # -- phases --------------------------------------------------------------

    def ensure_feasible(self) -> bool:
        """Phase 1 via a single artificial column; True iff feasible."""
        worst = None
        for i in range(self.m):
            if self.rows[i][-1] < 0 and (
                worst is None
                or self.rows[i][-1] < self.rows[worst][-1]
                or (
                    self.rows[i][-1] == self.rows[worst][-1]
                    and self.basis[i] < self.basis[worst]
                )
            ):
                worst = i
        if worst is None:
            return True
        # add artificial column with true coefficient -1 in every row
        x0col = len(self.cols)
        for row in self.rows:
            row.insert(x0col, -self.den)
        self.obj.insert(x0col, 0)
        self.cols.append(self.x0)
        # phase-1 objective: maximize -x0
        self.obj[:] = [0] * len(self.obj)
        self.obj[x0col] = self.den
        self._pivot(worst, x0col)
        status = self._run()
        assert status == "optimal"  # -x0 <= 0 is always bounded
        feasible = self.obj[-1] == 0
        if feasible:
            self._evict_artificial()
        return feasible

    def _evict_artificial(self) -> None:
        if self.x0 in self.basis:
            r = self.basis.index(self.x0)
            assert self.rows[r][-1] == 0
            target = None
            for j in range(len(self.cols)):
                if self.rows[r][j] != 0 and self.cols[j] != self.x0 and (
                    target is None or self.cols[j] < self.cols[target]
                ):
                    target = j
            if target is None:
                # redundant row: drop it
                del self.rows[r]
                del self.basis[r]
                self.m -= 1
            else:
                self._pivot(r, target)
        j = self.cols.index(self.x0)
        for row in self.rows:
            del row[j]
        del self.obj[j]
        del self.cols[j]

    def set_objective(self, coeffs: Sequence[int]) -> None:
        """Install objective max coeffs . x over structural variables,
        expressed through the current dictionary."""
        den = self.den
        obj = [0] * (len(self.cols) + 1)
        for j, label in enumerate(self.cols):
            if label < self.n:
                obj[j] = -den * coeffs[label]
        for i, label in enumerate(self.basis):
            if label < self.n:
                c = coeffs[label]
                if c:
                    row = self.rows[i]
                    for j in range(len(self.cols)):
                        obj[j] += c * row[j]
                    obj[-1] += c * row[-1]
        self.obj = obj

    def maximize(self, stop_when_positive: bool = False) -> str:
        status = self._run(stop_when_positive)
        return "optimal" if status == "positive" else status

    # -- extraction ----------------------------------------------------------

    def objective_value(self) -> Fraction:
        return Fraction(self.obj[-1], self.den)

    def assignment(self) -> list[Fraction]:
        values = [Fraction(0)] * self.n
        for i, label in enumerate(self.basis):
            if label < self.n:
                values[label] = Fraction(self.rows[i][-1], self.den)
        return values

    def support_rows(self) -> frozenset[int]:
        """Original row indices with nonzero dual in the current objective
        row (the certificate support: these rows alone force the bound)."""
        support = set()
        for j, label in enumerate(self.cols):
            if self.n <= label < self.n + self.m0 and self.obj[j] != 0:
                support.add(label - self.n)
        return frozenset(support)


# ---------------------------------------------------------------------------
# reduction of a LinearProgram to the integer core
# ---------------------------------------------------------------------------


def _scale_to_int(coeffs: list[Fraction], bound: Fraction) -> tuple[list[int], int]:
    scale = 1
    for c in coeffs:
        d = c.denominator
        if d != 1:
            scale = scale * d // gcd(scale, d)
    d = bound.denominator
    if d != 1:
        scale = scale * d // gcd(scale, d)
    if scale == 1:
        return [c.numerator for c in coeffs], bound.numerator
    return [int(c * scale) for c in coeffs], int(bound * scale)


def _presolve(lp: LinearProgram):
    """Substitute out single-variable equalities; detect trivial conflicts.

    Returns (fixed values, remaining (origin, form, relation, bound)
    tuples) or "infeasible".  Forms are shared, never mutated.
    """
    fixed: dict[str, Fraction] = {}
    cons = [
        (i, c.form, c.relation, c.bound) for i, c in enumerate(lp.constraints)
    ]
    changed = True
    while changed:
        changed = False
        remaining = []
        for origin, form, relation, bound in cons:
            if fixed and any(v in fixed for v in form):
                bound = bound - sum(
                    c * fixed[v] for v, c in form.items() if v in fixed
                )
                form = {v: c for v, c in form.items() if v not in fixed}
            if not form:
                ok = (
                    bound >= 0
                    if relation == "<="
                    else bound <= 0 if relation == ">=" else bound == 0
                )
                if not ok:
                    return "infeasible"
                changed = True
                continue
            if relation == "==" and len(form) == 1:
                (v, c), = form.items()
                fixed[v] = bound / c
                changed = True
                continue
            remaining.append((origin, form, relation, bound))
        cons = remaining
    for v, value in fixed.items():
        if v in lp.nonnegative and value < 0:
            return "infeasible"
    return fixed, cons


def solve(
    lp: LinearProgram,
    *,
    _stop_when_positive: bool = False,
    _want_support: bool = False,
) -> LPOutcome:
    """Exact two-phase simplex.

    Returns optimal(value, assignment), infeasible, or unbounded; with no
    objective, feasibility is decided and any feasible point returned with
    value 0.  Deterministic: identical programs give identical outcomes and
    assignments.
    """
    pre = _presolve(lp)
    if pre == "infeasible":
        return LPOutcome("infeasible")
    fixed, cons = pre

    sense, objform = ("max", {}) if lp.objective is None else lp.objective
    objform = {v: c for v, c in objform.items() if v not in fixed}
    obj_fixed_part = Fraction(0)
    if lp.objective is not None:
        obj_fixed_part = sum(
            (c * fixed[v] for v, c in lp.objective[1].items() if v in fixed),
            Fraction(0),
        )

    live = [v for v in lp.variables if v not in fixed]
    # free variables split into a difference of nonnegatives
    col_of: dict[str, int] = {}
    neg_col_of: dict[str, int] = {}
    ncols = 0
    for v in live:
        col_of[v] = ncols
        ncols += 1
        if v not in lp.nonnegative:
            neg_col_of[v] = ncols
            ncols += 1

    _zero = Fraction(0)

    def expand(form: Mapping[str, Fraction]) -> list[Fraction]:
        coeffs = [_zero] * ncols
        for v, c in form.items():
            coeffs[col_of[v]] = c  # forms hold each variable once
            if v in neg_col_of:
                coeffs[neg_col_of[v]] = -c
        return coeffs

    rows: list[tuple[list[int], int]] = []
    row_origin: list[int] = []
    for origin, form, relation, bound in cons:
        coeffs = expand(form)
        if relation in ("<=", "=="):
            rows.append(_scale_to_int(coeffs, bound))
            row_origin.append(origin)
        if relation in (">=", "=="):
            ic, ib = _scale_to_int(coeffs, bound)
            rows.append(([-a for a in ic], -ib))
            row_origin.append(origin)

    obj_sign = 1 if sense == "max" else -1
    obj_coeffs = expand({v: obj_sign * c for v, c in objform.items()})
    obj_scale = 1
    for c in obj_coeffs:
        d = c.denominator
        if d != 1:
            obj_scale = obj_scale * d // gcd(obj_scale, d)
    int_obj = [int(c * obj_scale) for c in obj_coeffs]

    def support() -> frozenset[int] | None:
        if not _want_support:
            return None
        return frozenset(row_origin[i] for i in core.support_rows())

    core = _Simplex(ncols, rows)
    if not core.ensure_feasible():
        return LPOutcome("infeasible", support=support())
    core.set_objective(int_obj)
    status = core.maximize(stop_when_positive=_stop_when_positive)
    if status == "unbounded":
        return LPOutcome("unbounded")

    raw = core.assignment()
    assignment = dict(fixed)
    for v in live:
        value = raw[col_of[v]]
        if v in neg_col_of:
            value -= raw[neg_col_of[v]]
        assignment[v] = value
    value = obj_fixed_part + Fraction(core.obj[-1], core.den * obj_scale) * obj_sign
    if lp.objective is None:
        value = Fraction(0)
    return LPOutcome("optimal", value, assignment, support=support())


# ---------------------------------------------------------------------------
# strict feasibility via slack maximization
# ---------------------------------------------------------------------------

SLACK = "__strict_slack"


def strict_feasibility(
    constraints: Sequence[tuple],
    normalization: tuple[Mapping[str, Fraction], Fraction] | None = None,
    nonnegative: Iterable[str] = (),
) -> dict[str, Fraction] | None:
    """Find an exact assignment satisfying a mix of strict and non-strict
    linear constraints, or None if there is none.

    Each entry is (form, strict, relation, bound) with relation '<=' or
    '>=' ('==' only with strict=False).  Every strict constraint gets the
    shared margin variable s added towards its bound; maximizing s decides
    strictness: optimum > 0 yields a point, optimum <= 0 means none exists,
    and an unbounded margin is pinned at s = 1.  The caller must supply any
    normalization (as an equality ``form == bound``) needed to break the
    scale-invariance of an otherwise homogeneous system.
    """
    assignment, _ = strict_feasibility_with_core(
        constraints, normalization, nonnegative
    )
    return assignment


def strict_feasibility_with_core(
    constraints: Sequence[tuple],
    normalization: tuple[Mapping[str, Fraction], Fraction] | None = None,
    nonnegative: Iterable[str] = (),
    want_core: bool = False,
) -> tuple[dict[str, Fraction] | None, frozenset[int] | None]:
    """strict_feasibility plus, on failure and request, a conflict core:
    indices into ``constraints`` whose entries already admit no strictly
    feasible point (together with the non-strict rows and sign bounds).
    """
    variables: list[str] = []
    seen = set()

    def note(form: Mapping[str, Fraction]) -> None:
        for v in form:
            if v not in seen:
                seen.add(v)
                variables.append(v)

    cons: list[tuple] = []
    for form, strict, relation, bound in constraints:
        if relation not in ("<=", ">=") and strict:
            raise LPError("strict constraints must use '<=' or '>='")
        note(form)
        if strict:
            form = dict(form)
            form[SLACK] = Fraction(1) if relation == "<=" else Fraction(-1)
        cons.append((form, relation, bound))
    if normalization is not None:
        nform, nbound = normalization
        note(nform)
        cons.append((dict(nform), "==", nbound))
    if SLACK in seen:
        raise LPError(f"variable name {SLACK!r} is reserved")
    variables.append(SLACK)
    signed = [v for v in nonnegative if v in seen] + [SLACK]

    lp = linear_program(
        variables,
        cons,
        objective=("max", {SLACK: 1}),
        nonnegative=signed,
    )
    outcome = solve(lp, _stop_when_positive=True, _want_support=want_core)
    if outcome.status == "infeasible" or (
        outcome.status == "optimal"
        and (outcome.value is None or outcome.value <= 0)
    ):
        core = None
        if want_core and outcome.support is not None:
            core = frozenset(i for i in outcome.support if i < len(constraints))
        return None, core
    if outcome.status == "unbounded":
        pinned = linear_program(
            variables,
            cons + [({SLACK: 1}, "==", 1)],
            objective=None,
            nonnegative=signed,
        )
        outcome = solve(pinned)
        assert outcome.status == "optimal"

    assignment = dict(outcome.assignment or {})
    margin = assignment.pop(SLACK)
    assert margin > 0
    _recheck_strict(constraints, normalization, assignment)
    return assignment, None


def _recheck_strict(constraints, normalization, assignment) -> None:
    """Exact re-verification of every original constraint, strict ones
    strictly; returned assignments are never allowed to drift."""

    def value(form):
        return sum((c * assignment[v] for v, c in form.items()), Fraction(0))

    for form, strict, relation, bound in constraints:
        lhs = value(form)
        if relation == "<=":
            ok = lhs < bound if strict else lhs <= bound
        elif relation == ">=":
            ok = lhs > bound if strict else lhs >= bound
        else:
            ok = lhs == bound
        assert ok, "strict feasibility assignment failed re-verification"
    if normalization is not None:
        nform, nbound = normalization
        assert value(nform) == nbound
