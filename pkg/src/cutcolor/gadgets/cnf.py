"""CNF formulas in DIMACS convention."""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class CnfFormula:
    n: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.n < 0:
            raise ValueError("variable count must be non-negative")
        for j, c in enumerate(clauses, start=1):
            if not c:
                raise ValueError(f"clause {j} is empty")
            vs = [abs(l) for l in c]
            if any(l == 0 or abs(l) > self.n for l in c):
                raise ValueError(f"clause {j} has a literal outside 1..{self.n}")
            if len(set(c)) != len(c):
                raise ValueError(f"clause {j} repeats a literal")
            if len(set(vs)) != len(vs):
                raise ValueError(f"clause {j} contains a literal and its negation")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def max_clause(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def sorted_clause(self, j: int) -> tuple:
        """Literals of clause j (1-based) ordered by variable index."""
        return tuple(sorted(self.clauses[j - 1], key=abs))

    def unused_variables(self) -> list:
        used = {abs(l) for c in self.clauses for l in c}
        return [i for i in range(1, self.n + 1) if i not in used]

    def satisfied_by(self, assignment) -> bool:
        """assignment[i-1] is the truth value of x_i."""
        return all(any((l > 0) == bool(assignment[abs(l) - 1]) for l in c) for c in self.clauses)

    def digest(self) -> str:
        return hashlib.sha256(format_cnf(self).encode()).hexdigest()


def is_satisfiable(phi: CnfFormula) -> bool:
    return any(phi.satisfied_by(a) for a in itertools.product((False, True), repeat=phi.n))


def parse_cnf(text: str) -> CnfFormula:
    n = None
    lits = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] in ("c", "%"):
            continue
        if parts[0] == "p":
            if len(parts) < 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: bad header {raw!r}")
            n = int(parts[2])
            continue
        if n is None:
            raise ValueError(f"line {lineno}: clause before header")
        lits.extend(int(t) for t in parts)
    if n is None:
        raise ValueError("missing 'p cnf' header")
    clauses, cur = [], []
    for l in lits:
        if l == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(l)
    if cur:
        clauses.append(tuple(cur))
    return CnfFormula(n, tuple(clauses))


def format_cnf(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.n} {phi.m}"]
    lines.extend(" ".join(map(str, c)) + " 0" for c in phi.clauses)
    return "\n".join(lines) + "\n"


def read_cnf(path) -> CnfFormula:
    with open(path) as fh:
        return parse_cnf(fh.read())
