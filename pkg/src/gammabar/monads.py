"""The monads C and Sp as filtered simplicial sets, and the filtration lemmas."""

from __future__ import annotations

from .checks import CheckReport
from .filtered import FilteredSSet
from .operad import BP, c_eps, c_eta, c_map, c_mu, sp_eta, sp_map, sp_mu
from .spaces import Base, CSpace, Filt, ResourceBoundError, Space, SpSpace, materialize_space


def eval_C(x: FilteredSSet, max_filt: int, max_dim: int) -> FilteredSSet:
    """``C(x)`` cut down to filtration ``max_filt`` and levels ``<= max_dim``."""
    return materialize_space(CSpace(Base(x)), max_dim, max_filt, f"C({x.name})")


def eval_Sp(x: FilteredSSet, max_filt: int, max_dim: int) -> FilteredSSet:
    return materialize_space(SpSpace(Base(x)), max_dim, max_filt, f"Sp({x.name})")


mu_C = c_mu
eta_C = c_eta
mu_Sp = sp_mu
eta_Sp = sp_eta
augmentation_eps = c_eps


class ContainmentError(AssertionError):
    """A point left the subobject it was supposed to stay in."""


def switch_factor(p, m: int, inner: Space, d: int):
    """View a point of ``filt_m C(inner)`` as a point of ``C(filt_m inner)``.

    Every coordinate of ``p`` has filtration at most the total, so the point
    is returned unchanged; the membership is checked, not assumed.
    """
    c = CSpace(inner)
    if c.phi(p) > m:
        raise ContainmentError(f"filtration {c.phi(p)} exceeds {m}")
    target = CSpace(Filt(inner, m))
    if not target.contains(p, d):
        raise ContainmentError(f"{p!r} is not a point of {target.name}")
    return p


def mu_across_filter(p, m: int, inner: Space, d: int):
    """``C(filt_m C(inner)) -> C(filt_m inner)`` by the monad multiplication."""
    q = c_mu(p)
    target = CSpace(Filt(inner, m))
    if not target.contains(q, d):
        raise ContainmentError(f"multiplying {p!r} leaves {target.name}")
    return q


def check_filtration_lemmas(x: FilteredSSet, m: int, max_dim: int = 1, cap: int = 3) -> dict[str, CheckReport]:
    """Exhaustive checks of how C, Sp and the rank filtration interact.

    ``x`` is the base space; the switch and multiplication checks run over
    ``Sp(x)`` as the inner space.  ``cap`` bounds the arity of outer C's that
    carry no filtration of their own.
    """
    base = Base(x)
    inner = SpSpace(base)
    out = {}

    rep = CheckReport(f"switch factorization (m={m})")
    seen = {}
    source = Filt(CSpace(inner), m)
    for d in range(max_dim + 1):
        for p in source.points(d):
            try:
                q = switch_factor(p, m, inner, d)
            except ContainmentError as exc:
                rep.fail(str(exc))
                continue
            # the composite with C(filt_m inner) -> C(inner) is the inclusion
            rep.check(q == p, lambda: f"composite moves {p!r}")
            rep.check(seen.setdefault((d, q), p) == p, lambda: f"two points switch to {q!r}")
    out["switch"] = rep

    rep = CheckReport(f"multiplication across the filter (m={m})")
    source = CSpace(Filt(CSpace(inner), m), cap)
    for d in range(max_dim + 1):
        for p in source.points(d):
            try:
                q = mu_across_filter(p, m, inner, d)
            except ContainmentError as exc:
                rep.fail(str(exc))
                continue
            rep.check(CSpace(inner).phi(q) == source.phi(p), lambda: f"filtration changes on {p!r}")
    out["composition"] = rep

    rep = CheckReport("filtration one of C is the filtration one of the input")
    for d in range(max_dim + 1):
        ones = [p for p in Filt(inner, 1).points(d)]
        cs = Filt(CSpace(inner), 1).points(d)
        image = {c_eta(p, d) for p in ones}
        rep.check(len(image) == len(ones), "eta is not injective on filtration one")
        rep.check(image == set(cs), lambda: f"level {d}: {len(cs)} points against {len(ones)}")
    out["filtration_one"] = rep

    rep = CheckReport("membership through the augmentation")
    c, sp = CSpace(base), SpSpace(base)
    budget = m + 1
    for d in range(max_dim + 1):
        for p in c.points(d, budget):
            q = c_eps(p)
            rep.check((q == BP) == (p == BP), lambda: f"only the basepoint may augment to the basepoint: {p!r}")
            for k in range(budget + 1):
                rep.check(
                    Filt(c, k).contains(p, d) == Filt(sp, k).contains(q, d),
                    lambda: f"filt_{k} membership differs for {p!r}",
                )
    out["pullback"] = rep

    rep = CheckReport("augmentation is a map of monads")
    cc = CSpace(CSpace(base))
    for d in range(max_dim + 1):
        for p in cc.points(d, m):
            rep.check(c_eps(c_mu(p)) == sp_mu(sp_map(c_eps(p), c_eps)), lambda: f"square fails at {p!r}")
        for p in c.points(d, m):
            rep.check(c_eps(c_eta(p, d)) == sp_eta(p), lambda: f"unit square fails at {p!r}")
            rep.check(c_mu(c_map(p, lambda y, d=d: c_eta(y, d))) == p, lambda: f"unit law fails at {p!r}")
    out["augmentation"] = rep
    return out


__all__ = [
    "BP",
    "ContainmentError",
    "ResourceBoundError",
    "augmentation_eps",
    "check_filtration_lemmas",
    "eta_C",
    "eta_Sp",
    "eval_C",
    "eval_Sp",
    "mu_C",
    "mu_Sp",
    "mu_across_filter",
    "switch_factor",
]
