"""Information criteria, their robust analogues, and comparison tables.

The classical criteria are ``-2 * objective + penalty`` with penalty ``2k``
(Akaike form) or ``ln(n) * k`` (Bayes form).  Replacing the log-likelihood
objective by a robust estimating-function value gives the robust pair; the
formulas are identical, only the objective changes.  Because different
objectives live on different scales, criteria are only ranked inside a
comparability class, never across classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_PENALTIES = ("aic", "bic")


def ic(objective: float, k: int, n: int, penalty: str = "aic") -> float:
    """Information criterion ``-2 * objective + c_k``.

    ``penalty="aic"`` uses ``c_k = 2k``; ``penalty="bic"`` uses
    ``c_k = ln(n) * k``.  ``k`` is the number of fitted parameters and ``n``
    the sample size.
    """
    if penalty not in _PENALTIES:
        raise ValueError(f"penalty must be one of {_PENALTIES}, got {penalty!r}")
    k = int(k)
    n = int(n)
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    objective = float(objective)
    if penalty == "aic":
        return -2.0 * objective + 2.0 * k
    return -2.0 * objective + math.log(n) * k


def ric_q(objective: float, k: int, n: int, penalty: str = "aic") -> float:
    """Robust criterion on an estimating-function objective; same formula."""
    return ic(objective, k, n, penalty)


@dataclass(frozen=True)
class ICReport:
    """One fitted row: label, estimates, objective, and its criterion pair.

    ``criteria`` maps criterion names to values: ``AIC``/``BIC`` for plain
    likelihood fits, ``RAIC_q``/``RBIC_q`` for robust objectives.
    ``comparability`` is the class key under which ranking is allowed.
    """

    label: str
    theta: dict
    objective: float
    k: int
    n: int
    criteria: dict
    comparability: tuple
    condition: str = "clean"

    def __post_init__(self):
        if len(self.criteria) != 2:
            raise ValueError("criteria must hold exactly the Akaike and Bayes forms")
        object.__setattr__(self, "theta", dict(self.theta))
        object.__setattr__(self, "criteria", dict(self.criteria))
        object.__setattr__(self, "comparability", tuple(self.comparability))

    @property
    def akaike(self) -> tuple[str, float]:
        name, value = list(self.criteria.items())[0]
        return name, value

    @property
    def bayes(self) -> tuple[str, float]:
        name, value = list(self.criteria.items())[1]
        return name, value

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "condition": self.condition,
            "theta": dict(self.theta),
            "objective": self.objective,
            "k": self.k,
            "n": self.n,
            "criteria": dict(self.criteria),
            "comparability": list(map(str, self.comparability)),
        }


def ic_report(
    label: str,
    theta: dict,
    objective: float,
    k: int,
    n: int,
    robust: bool,
    comparability: tuple,
    condition: str = "clean",
) -> ICReport:
    """Build a report row, computing both criterion forms from the objective."""
    names = ("RAIC_q", "RBIC_q") if robust else ("AIC", "BIC")
    criteria = {
        names[0]: ic(objective, k, n, "aic"),
        names[1]: ic(objective, k, n, "bic"),
    }
    return ICReport(
        label=label,
        theta=theta,
        objective=objective,
        k=k,
        n=n,
        criteria=criteria,
        comparability=comparability,
        condition=condition,
    )


@dataclass(frozen=True)
class ComparisonRow:
    report: ICReport
    best: bool


class ComparisonTable:
    """Reports grouped by comparability class, with within-class winners.

    A row is flagged best when its class holds at least two rows and it
    minimizes the Akaike-form criterion there; singleton classes are left
    unflagged because a lone value ranks nothing.
    """

    def __init__(self, rows: list[ComparisonRow]):
        self.rows = list(rows)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def to_text(self) -> str:
        """Aligned table with 4-decimal numbers, one line per report."""
        header = ["label", "condition", "estimates", "objective", "AIC|RAIC_q", "BIC|RBIC_q", "best"]
        body = []
        for row in self.rows:
            rep = row.report
            estimates = ", ".join(f"{k}={v:.4f}" for k, v in rep.theta.items())
            body.append(
                [
                    rep.label,
                    rep.condition,
                    estimates,
                    f"{rep.objective:.4f}",
                    f"{rep.akaike[0]}={rep.akaike[1]:.4f}",
                    f"{rep.bayes[0]}={rep.bayes[1]:.4f}",
                    "*" if row.best else "",
                ]
            )
        widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
        lines = []
        for record in [header] + body:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(record, widths)).rstrip())
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        """Full-precision CSV, one line per report."""
        lines = [
            "label,condition,estimates,objective,akaike_name,akaike,bayes_name,bayes,k,n,best"
        ]
        for row in self.rows:
            rep = row.report
            estimates = ";".join(f"{k}={float(v)!r}" for k, v in rep.theta.items())
            a_name, a_val = rep.akaike
            b_name, b_val = rep.bayes
            lines.append(
                ",".join(
                    [
                        f'"{rep.label}"',
                        rep.condition,
                        f'"{estimates}"',
                        repr(rep.objective),
                        a_name,
                        repr(a_val),
                        b_name,
                        repr(b_val),
                        str(rep.k),
                        str(rep.n),
                        "1" if row.best else "0",
                    ]
                )
            )
        return "\n".join(lines) + "\n"


def compare(reports: list[ICReport]) -> ComparisonTable:
    """Group reports by comparability class and flag within-class winners.

    Input order is preserved.  Classes are keyed by the reports'
    ``comparability`` tuples; no flag ever crosses a class boundary.
    """
    groups: dict[tuple, list[int]] = {}
    for idx, rep in enumerate(reports):
        groups.setdefault(rep.comparability, []).append(idx)
    best_indices = set()
    for indices in groups.values():
        if len(indices) < 2:
            continue
        winner = min(indices, key=lambda i: reports[i].akaike[1])
        best_indices.add(winner)
    rows = [ComparisonRow(report=rep, best=(i in best_indices)) for i, rep in enumerate(reports)]
    return ComparisonTable(rows)
