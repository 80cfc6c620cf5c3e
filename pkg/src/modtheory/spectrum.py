"""Prime and semiprime submodules, the minimal prime spectrum, and the
structure checks built on them.

The base definitions quantify over fully invariant submodules; on a
self-projective module this is equivalent to quantifying over all submodules,
and the engine uses the wider quantifier there.  Every verdict records which
quantifier produced it, because conflating the two corrupts
non-self-projective fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass
import time

from .analysis import Analysis, get_analysis
from .caps import Caps
from .errors import NotProper, VerificationFailure
from .modules import (FiniteModule, Submodule, intersect_submodules,
                      sum_submodules)
from .products import is_annihilator_submodule, is_tm_nilpotent
from .reporting import Report, Statement, jsonify, run_statement, subject_of

ALL_SUBMODULES = "all_submodules"
FULLY_INVARIANT = "fully_invariant"


@dataclass(frozen=True)
class PrimeWitness:
    kind: str  # prime | not_prime | semiprime | not_semiprime
    offenders: tuple | None
    quantifier: str

    @property
    def holds(self) -> bool:
        return self.kind in ("prime", "semiprime")

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class SpectrumReport:
    minimal_primes: tuple
    intersection: Submodule
    annihilator_flags: tuple   # Witnessed per minimal prime
    right_annihilators: tuple  # Submodule or None per minimal prime
    all_primes: tuple
    quantifier: str


def _quantifier_domain(ctx: Analysis, quantifier: str | None):
    if quantifier is None:
        quantifier = ALL_SUBMODULES if ctx.self_projective else FULLY_INVARIANT
    domain = ctx.subs if quantifier == ALL_SUBMODULES else ctx.fi_subs
    return quantifier, domain


def _semiprime_kind(ctx: Analysis, n: Submodule, quantifier: str | None = None):
    quantifier, domain = _quantifier_domain(ctx, quantifier)
    nset = set(n.elements)
    for k in domain:
        if set(k.elements) <= nset:
            continue
        if set(ctx.product_value(k, k).elements) <= nset:
            return PrimeWitness("not_semiprime", (k,), quantifier)
    return PrimeWitness("semiprime", None, quantifier)


def _prime_kind(ctx: Analysis, p: Submodule, quantifier: str | None = None):
    quantifier, domain = _quantifier_domain(ctx, quantifier)
    pset = set(p.elements)
    outside = [k for k in domain if not set(k.elements) <= pset]
    for k in outside:
        for l in outside:
            if set(ctx.product_value(k, l).elements) <= pset:
                return PrimeWitness("not_prime", (k, l), quantifier)
    return PrimeWitness("prime", None, quantifier)


def is_semiprime_in(m: FiniteModule, n: Submodule, caps: Caps | None = None,
                    ctx: Analysis | None = None) -> PrimeWitness:
    """Is N semiprime in M: K_M K inside N forces K inside N."""
    ctx = get_analysis(m, caps, ctx)
    ctx.require_fully_invariant(n)
    return ctx.cache(("semiprime_in", n.elements), lambda: _semiprime_kind(ctx, n))


def is_prime_in(m: FiniteModule, p: Submodule, caps: Caps | None = None,
                ctx: Analysis | None = None) -> PrimeWitness:
    """Is P prime in M: K_M L inside P forces K or L inside P; P must be proper."""
    ctx = get_analysis(m, caps, ctx)
    if len(p) == m.order:
        raise NotProper("prime submodules must be proper")
    ctx.require_fully_invariant(p)
    return ctx.cache(("prime_in", p.elements), lambda: _prime_kind(ctx, p))


def module_semiprime(ctx: Analysis) -> PrimeWitness:
    """M is semiprime when 0 is semiprime in M."""
    return ctx.cache("module_semiprime",
                     lambda: _semiprime_kind(ctx, ctx.zero_sub))


def spec_min(m: FiniteModule, caps: Caps | None = None,
             ctx: Analysis | None = None) -> SpectrumReport:
    """Enumerate all prime submodules, keep the inclusion-minimal ones, and
    attach annihilator flags and right annihilators."""
    ctx = get_analysis(m, caps, ctx)

    def compute():
        quantifier = ALL_SUBMODULES if ctx.self_projective else FULLY_INVARIANT
        primes = []
        for p in ctx.fi_subs:
            if len(p) == m.order:
                continue
            if _prime_kind_cached(ctx, p).holds:
                primes.append(p)
        minimal = tuple(p for p in primes
                        if not any(q < p for q in primes))
        inter = ctx.whole_sub
        for p in minimal:
            inter = intersect_submodules(inter, p)
        flags = tuple(is_annihilator_submodule(m, p, ctx.caps, ctx.endos, ctx.subs)
                      for p in minimal)
        ranns = []
        for p in minimal:
            try:
                ranns.append(ctx.ann_right(p))
            except VerificationFailure:
                ranns.append(None)
        return SpectrumReport(minimal, inter, flags, tuple(ranns),
                              tuple(primes), quantifier)
    return ctx.cache("spec_min", compute)


def _prime_kind_cached(ctx: Analysis, p: Submodule) -> PrimeWitness:
    return ctx.cache(("prime_in", p.elements), lambda: _prime_kind(ctx, p))


def ass_of(m: FiniteModule, n: Submodule, caps: Caps | None = None,
           ctx: Analysis | None = None) -> tuple:
    """Associated primes: proper K that is the common annihilator of every
    nonzero submodule of some nonzero L inside n.  Exhaustive over the
    sublattice of n."""
    ctx = get_analysis(m, caps, ctx)
    if n.is_zero:
        raise ValueError("ass_of requires a nonzero submodule")

    def compute():
        nset = set(n.elements)
        inside = [l for l in ctx.subs if set(l.elements) <= nset and not l.is_zero]
        found = set()
        for l in inside:
            lset = set(l.elements)
            anns = {ctx.ann_left(lp).elements
                    for lp in inside if set(lp.elements) <= lset}
            if len(anns) == 1:
                k = ctx.sub(next(iter(anns)))
                if len(k) < m.order:
                    found.add(k)
        return tuple(sorted(found, key=lambda s: (len(s), s.elements)))
    return ctx.cache(("ass_of", n.elements), compute)


# ---------------------------------------------------------------------------
# hypothesis gates shared by the statement checkers

def gate_sp(ctx: Analysis) -> dict:
    return {"self_projective": bool(ctx.self_projective)}

def gate_sp_semiprime(ctx: Analysis) -> dict:
    return {"self_projective": bool(ctx.self_projective),
            "semiprime": module_semiprime(ctx).holds,
            "acc_on_annihilators": True}

def gate_sp_retractable(ctx: Analysis) -> dict:
    return {"self_projective": bool(ctx.self_projective),
            "retractable": bool(ctx.retractable),
            "acc_on_annihilators": True}


# ---------------------------------------------------------------------------
# statement checks: section 1 material

def _check_power_absorption(ctx: Analysis):
    """Some power of J landing in a semiprime N forces J into N."""
    m = ctx.module
    for n in ctx.fi_subs:
        if len(n) == m.order:
            continue
        if not _semiprime_kind_cached(ctx, n).holds:
            continue
        nset = set(n.elements)
        for j in ctx.subs:
            if set(ctx.stable_power(j).elements) <= nset:
                if not set(j.elements) <= nset:
                    return False, {"semiprime": n, "offender": j}
    return True, {}


def _semiprime_kind_cached(ctx: Analysis, n: Submodule) -> PrimeWitness:
    return ctx.cache(("semiprime_in", n.elements), lambda: _semiprime_kind(ctx, n))


def _check_zero_product_symmetry(ctx: Analysis):
    """N_M L = 0 forces L_M N = 0 and trivial intersection."""
    for n in ctx.subs:
        for l in ctx.subs:
            if ctx.product_value(n, l).is_zero:
                if not ctx.product_value(l, n).is_zero:
                    return False, {"pair": (n, l), "reason": "reverse product nonzero"}
                if not intersect_submodules(n, l).is_zero:
                    return False, {"pair": (n, l), "reason": "intersection nonzero"}
    return True, {}


def _check_ann_intersection_trivial(ctx: Analysis):
    for l in ctx.subs:
        if not intersect_submodules(l, ctx.ann_left(l)).is_zero:
            return False, {"offender": l, "ann": ctx.ann_left(l)}
    return True, {}


def _check_retractable(ctx: Analysis):
    w = ctx.retractable
    return w.holds, {} if w.holds else {"offender": w.witness}


def _check_ann_left_equals_right(ctx: Analysis):
    for n in ctx.subs:
        left = ctx.ann_left(n)
        right = ctx.ann_right(n)
        if left != right:
            return False, {"submodule": n, "ann_left": left, "ann_right": right}
    return True, {}


def _annihilator_submodules(ctx: Analysis) -> tuple:
    return ctx.cache("annihilator_submodules", lambda: tuple(sorted(
        {ctx.ann_left(k) for k in ctx.subs},
        key=lambda s: (len(s), s.elements))))


def _check_double_annihilator(ctx: Analysis):
    for n in _annihilator_submodules(ctx):
        if ctx.ann_left(ctx.ann_left(n)) != n:
            return False, {"submodule": n, "double_left": ctx.ann_left(ctx.ann_left(n))}
        if ctx.ann_right(ctx.ann_right(n)) != n:
            return False, {"submodule": n, "double_right": ctx.ann_right(ctx.ann_right(n))}
    return True, {}


def _check_semiprime_equivalence(ctx: Analysis):
    """Definition of semiprime versus the overmodule formulation."""
    m = ctx.module
    for n in ctx.fi_subs:
        if len(n) == m.order:
            continue
        direct = _semiprime_kind_cached(ctx, n).holds
        nset = set(n.elements)
        over = True
        for k in ctx.subs:
            if nset < set(k.elements) and set(ctx.product_value(k, k).elements) <= nset:
                over = False
                break
        if direct != over:
            return False, {"submodule": n, "direct": direct, "overmodule": over}
    return True, {}


def _check_prime_equivalence(ctx: Analysis):
    """Prime definition versus the overmodule formulation."""
    m = ctx.module
    for p in ctx.fi_subs:
        if len(p) == m.order:
            continue
        direct = _prime_kind_cached(ctx, p).holds
        pset = set(p.elements)
        over = True
        strict = [k for k in ctx.subs if pset < set(k.elements)]
        for k in strict:
            for l in strict:
                if set(ctx.product_value(k, l).elements) <= pset:
                    over = False
                    break
            if not over:
                break
        if direct != over:
            return False, {"submodule": p, "direct": direct, "overmodule": over}
    return True, {}


def _check_quantifier_equivalence(ctx: Analysis):
    """Under self-projectivity, fully invariant pairs and arbitrary pairs
    produce the same prime/semiprime verdicts."""
    m = ctx.module
    for n in ctx.fi_subs:
        if len(n) == m.order:
            continue
        if (_semiprime_kind(ctx, n, FULLY_INVARIANT).holds
                != _semiprime_kind(ctx, n, ALL_SUBMODULES).holds):
            return False, {"submodule": n, "predicate": "semiprime"}
        if (_prime_kind(ctx, n, FULLY_INVARIANT).holds
                != _prime_kind(ctx, n, ALL_SUBMODULES).holds):
            return False, {"submodule": n, "predicate": "prime"}
    return True, {}


def _check_uniform_ann_constant(ctx: Analysis):
    """On a uniform submodule the annihilator is constant across nonzero
    submodules."""
    for u in ctx.uniform_subs:
        base = ctx.ann_left(u)
        uset = set(u.elements)
        for up in ctx.subs:
            if up.is_zero or not set(up.elements) <= uset:
                continue
            if ctx.ann_left(up) != base:
                return False, {"uniform": u, "inner": up,
                               "ann_outer": base, "ann_inner": ctx.ann_left(up)}
    return True, {}


def _check_uniform_ann_minimal_prime(ctx: Analysis):
    """Annihilators that are prime are inclusion-minimal among all primes."""
    sm = spec_min(ctx.module, ctx.caps, ctx)
    primes = set(sm.all_primes)
    for k in ctx.subs:
        p = ctx.ann_left(k)
        if p in primes:
            if any(q < p for q in sm.all_primes):
                return False, {"source": k, "prime": p}
    return True, {}


def _check_tm_nilpotent_implies_nilpotent(ctx: Analysis):
    m = ctx.module
    for n in ctx.subs:
        tm = is_tm_nilpotent(m, n, ctx.caps, ctx.endos)
        if tm.holds and not ctx.is_nilpotent(n).holds:
            return False, {"submodule": n, "stable_power": ctx.is_nilpotent(n).witness}
    return True, {}


# ---------------------------------------------------------------------------
# statement checks: the finite-spectrum structure theorem family

def _check_finitely_many_minimal(ctx: Analysis):
    sm = spec_min(ctx.module, ctx.caps, ctx)
    return True, {"minimal_prime_count": len(sm.minimal_primes),
                  "prime_count": len(sm.all_primes)}


def _check_minimal_intersection_zero(ctx: Analysis):
    sm = spec_min(ctx.module, ctx.caps, ctx)
    ok = sm.intersection.is_zero if ctx.module.order > 1 else True
    return ok, {"minimal_primes": sm.minimal_primes,
                "intersection": sm.intersection}


def _check_minimal_iff_annihilator(ctx: Analysis):
    sm = spec_min(ctx.module, ctx.caps, ctx)
    minimal = set(sm.minimal_primes)
    for p in sm.all_primes:
        flag = is_annihilator_submodule(ctx.module, p, ctx.caps, ctx.endos, ctx.subs)
        if (p in minimal) != flag.holds:
            return False, {"prime": p, "minimal": p in minimal,
                           "annihilator": flag.holds}
    return True, {}


def _check_right_annihilator_primes(ctx: Analysis):
    """Every nonzero submodule of the right annihilator of a minimal prime has
    that prime as its annihilator."""
    sm = spec_min(ctx.module, ctx.caps, ctx)
    for p in sm.minimal_primes:
        l = ctx.ann_right(p)
        lset = set(l.elements)
        for lp in ctx.subs:
            if lp.is_zero or not set(lp.elements) <= lset:
                continue
            if ctx.ann_left(lp) != p:
                return False, {"prime": p, "inner": lp, "ann": ctx.ann_left(lp)}
    return True, {}


def _check_right_annihilator_intersection(ctx: Analysis):
    """Right annihilator of each minimal prime equals the intersection of the
    other minimal primes."""
    sm = spec_min(ctx.module, ctx.caps, ctx)
    for i, p in enumerate(sm.minimal_primes):
        expected = ctx.whole_sub
        for j, q in enumerate(sm.minimal_primes):
            if i != j:
                expected = intersect_submodules(expected, q)
        if ctx.ann_right(p) != expected:
            return False, {"prime": p, "ann_right": ctx.ann_right(p),
                           "intersection_others": expected}
    return True, {}


def _check_right_annihilators_independent(ctx: Analysis):
    sm = spec_min(ctx.module, ctx.caps, ctx)
    partial = ctx.zero_sub
    for p in sm.minimal_primes:
        n_i = ctx.ann_right(p)
        if not intersect_submodules(n_i, partial).is_zero:
            return False, {"prime": p, "overlap": intersect_submodules(n_i, partial)}
        partial = sum_submodules(ctx.module, partial, n_i)
    return True, {}


SECTION1_STATEMENTS = (
    Statement("Rem1.2", "quantifier equivalence under self-projectivity",
              gate_sp, _check_quantifier_equivalence),
    Statement("Prop1.3", "semiprime equals overmodule formulation",
              gate_sp, _check_semiprime_equivalence),
    Statement("Rem1.4", "prime equals overmodule formulation",
              gate_sp, _check_prime_equivalence),
    Statement("Lem1.6", "power absorption into semiprime submodules",
              gate_sp, _check_power_absorption),
    Statement("Lem1.7", "zero products are symmetric with trivial intersection",
              gate_sp_semiprime, _check_zero_product_symmetry),
    Statement("Rem1.8", "submodules meet their annihilators trivially",
              gate_sp_semiprime, _check_ann_intersection_trivial),
    Statement("Prop1.9", "semiprime self-projective modules are retractable",
              gate_sp_semiprime, _check_retractable),
    Statement("Prop1.16", "left and right annihilators coincide",
              gate_sp_semiprime, _check_ann_left_equals_right),
    Statement("Prop1.18", "double annihilator fixes annihilator submodules",
              gate_sp_semiprime, _check_double_annihilator),
    Statement("Lem1.13", "prime annihilators are minimal primes",
              gate_sp_semiprime, _check_uniform_ann_minimal_prime),
    Statement("Rem1.12", "annihilators are constant on uniform submodules",
              gate_sp_semiprime, _check_uniform_ann_constant),
    Statement("Prop2.33", "transfinite nilpotence implies nilpotence",
              gate_sp_retractable, _check_tm_nilpotent_implies_nilpotent),
)

SEMIPRIME_STATEMENTS = (
    Statement("Thm2.2.i", "finitely many minimal primes",
              gate_sp_semiprime, _check_finitely_many_minimal),
    Statement("Thm2.2.ii", "minimal primes intersect in zero",
              gate_sp_semiprime, _check_minimal_intersection_zero),
    Statement("Thm2.2.iii", "minimal primes are exactly the prime annihilator submodules",
              gate_sp_semiprime, _check_minimal_iff_annihilator),
    Statement("Lem2.16", "right annihilators of minimal primes have constant annihilator",
              gate_sp_semiprime, _check_right_annihilator_primes),
    Statement("Lem2.25", "right annihilator equals intersection of the other primes",
              gate_sp_semiprime, _check_right_annihilator_intersection),
    Statement("Prop2.17", "right annihilators form an independent family",
              gate_sp_semiprime, _check_right_annihilators_independent),
)


def verify_semiprime_structure(m: FiniteModule, caps: Caps | None = None,
                               ctx: Analysis | None = None) -> Report:
    """Run the finite-spectrum structure checks with hypothesis gating.

    Under met hypotheses a failed conclusion is a VIOLATION with a full
    witness; under unmet hypotheses the verdicts are informative only.
    """
    ctx = get_analysis(m, caps, ctx)
    hypotheses = {
        "self_projective": jsonify(ctx.self_projective),
        "semiprime": {"holds": module_semiprime(ctx).holds,
                      "witness": jsonify(module_semiprime(ctx).offenders)},
        "acc_on_annihilators": {"holds": True,
                                "max_chain": ctx.annihilator_set().longest_chain()},
    }
    findings = []
    timings = {}
    for stmt in SEMIPRIME_STATEMENTS:
        t0 = time.perf_counter()
        findings.append(run_statement(stmt, ctx))
        timings[stmt.id] = (time.perf_counter() - t0) * 1000.0
    return Report(subject_of(ctx), hypotheses, findings, timings)
