"""A small accumulator for exhaustive identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    failure_count: int = 0
    skipped: list[str] = field(default_factory=list)
    max_failures_kept: int = 20

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def check(self, cond: bool, msg) -> bool:
        """Record one instance; ``msg`` may be a callable for laziness."""
        self.checked += 1
        if not cond:
            self.failure_count += 1
            if len(self.failures) < self.max_failures_kept:
                self.failures.append(msg() if callable(msg) else str(msg))
        return cond

    def fail(self, msg: str) -> None:
        self.check(False, msg)

    def merge(self, other: "CheckReport") -> None:
        self.checked += other.checked
        self.failure_count += other.failure_count
        room = self.max_failures_kept - len(self.failures)
        if room > 0:
            self.failures.extend(f"{other.name}: {m}" for m in other.failures[:room])
        self.skipped.extend(other.skipped)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failures": self.failure_count,
            "first_failures": list(self.failures),
            "skipped": list(self.skipped),
        }

    def __str__(self) -> str:
        status = "ok" if self.ok else f"{self.failure_count} failures"
        return f"{self.name}: {self.checked} checked, {status}"


@dataclass
class SimplicialObjectView:
    """Point-level access to a simplicial object in simplicial sets.

    ``face(k, j, x, d)`` and ``degen(k, j, x, d)`` are the external structure
    maps at bar level ``k`` on a point ``x`` of internal dimension ``d``;
    ``internal_face(k, x, t, d)`` and ``internal_degen`` are the structure
    maps of the simplicial set at level ``k``.  ``borderline(k, x, j)`` marks
    faces that deserve separate bookkeeping.
    """

    name: str
    points: object
    face: object
    degen: object
    contains: object
    phi: object
    internal_face: object
    internal_degen: object
    describe: object = repr
    borderline: object = None


def check_simplicial_object(
    obj: SimplicialObjectView, K: int, max_dim: int, border: CheckReport | None = None
) -> CheckReport:
    """All five simplicial identity families, membership, filtration monotonicity
    and commutation with the internal structure, over every enumerated point."""
    rep = CheckReport(f"{obj.name} identities")
    bl = obj.borderline or (lambda k, x, j: False)
    for k in range(K + 1):
        for d in range(max_dim + 1):
            for x in obj.points(k, d):
                _check_one(obj, rep, border, bl, K, k, x, d)
    return rep


def _check_one(obj, rep, border, bl, K, k, x, d):
    phi = obj.phi(k, x)
    desc = lambda: f"level {k}, dim {d}, {obj.describe(k, x)}"  # noqa: E731

    def record(cond, msg, involved):
        rep.check(cond, msg)
        if border is not None and involved:
            border.check(cond, msg)

    faces = {}
    if k >= 1:
        for i in range(k + 1):
            y = obj.face(k, i, x, d)
            faces[i] = y
            rep.check(obj.contains(k - 1, y, d), lambda: f"d{i} leaves level {k - 1} at {desc()}")
            rep.check(obj.phi(k - 1, y) <= phi, lambda: f"d{i} raises filtration at {desc()}")
    degs = {}
    if k + 1 <= K:
        for j in range(k + 1):
            y = obj.degen(k, j, x, d)
            degs[j] = y
            rep.check(obj.contains(k + 1, y, d), lambda: f"s{j} leaves level {k + 1} at {desc()}")
            rep.check(obj.phi(k + 1, y) == phi, lambda: f"s{j} changes filtration at {desc()}")
    if k >= 2:
        for j in range(k + 1):
            for i in range(j):
                involved = bl(k, x, i) or bl(k, x, j) or bl(k - 1, faces[j], i) or bl(k - 1, faces[i], j - 1)
                record(
                    obj.face(k - 1, i, faces[j], d) == obj.face(k - 1, j - 1, faces[i], d),
                    lambda: f"d{i}d{j} != d{j - 1}d{i} at {desc()}",
                    involved,
                )
    if k + 1 <= K:
        for j in range(k + 1):
            sj = degs[j]
            for i in range(k + 2):
                involved = bl(k + 1, sj, i)
                lhs = obj.face(k + 1, i, sj, d)
                if i in (j, j + 1):
                    record(lhs == x, lambda: f"d{i}s{j} != id at {desc()}", involved)
                elif i < j:
                    record(
                        lhs == obj.degen(k - 1, j - 1, faces[i], d),
                        lambda: f"d{i}s{j} != s{j - 1}d{i} at {desc()}",
                        involved or bl(k, x, i),
                    )
                else:
                    record(
                        lhs == obj.degen(k - 1, j, faces[i - 1], d),
                        lambda: f"d{i}s{j} != s{j}d{i - 1} at {desc()}",
                        involved or bl(k, x, i - 1),
                    )
    if k + 2 <= K:
        for j in range(k + 1):
            for i in range(j + 1):
                rep.check(
                    obj.degen(k + 1, i, degs[j], d) == obj.degen(k + 1, j + 1, degs[i], d),
                    lambda: f"s{i}s{j} != s{j + 1}s{i} at {desc()}",
                )
    for t in range(d + 1):
        if d:
            xf = obj.internal_face(k, x, t, d)
            for i, y in faces.items():
                rep.check(
                    obj.face(k, i, xf, d - 1) == obj.internal_face(k - 1, y, t, d),
                    lambda: f"d{i} does not commute with internal d{t} at {desc()}",
                )
        xs = obj.internal_degen(k, x, t, d)
        for i, y in faces.items():
            rep.check(
                obj.face(k, i, xs, d + 1) == obj.internal_degen(k - 1, y, t, d),
                lambda: f"d{i} does not commute with internal s{t} at {desc()}",
            )
        for j, y in degs.items():
            rep.check(
                obj.degen(k, j, xs, d + 1) == obj.internal_degen(k + 1, y, t, d),
                lambda: f"s{j} does not commute with internal s{t} at {desc()}",
            )
