"""Endomorphism-ring analyses: the Jacobson radical, the essential-kernel
ideal, the right singular ideal, continuity, and the Goldie report.

Composition convention: mul(i, j) indexes maps[i] composed after maps[j]
(apply j first).  All identities here are stated against this convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import time

from .analysis import Analysis, get_analysis
from .caps import Caps, effective
from .errors import CapExceeded
from .injectives import (_ctx_bounded_singular, _ctx_k_singular, _ctx_mhat,
                         reject)
from .modules import (FiniteModule, Homomorphism, Submodule, Witnessed,
                      are_isomorphic, hom_set, is_essential, is_essential_in,
                      submodule_generate, submodule_module)
from .rings import FiniteRing, Ideal, ideals
from .reporting import (Finding, Report, Statement, jsonify, run_statement,
                        subject_of)
from .spectrum import gate_sp, module_semiprime


@dataclass(frozen=True)
class EndoRing:
    base: FiniteModule
    ring: FiniteRing
    maps: tuple  # maps[i] is the endomorphism behind ring element i
    _index: dict = field(compare=False, hash=False, repr=False, default=None)

    def index_of(self, h: Homomorphism) -> int:
        return self._index[h.image]


@dataclass(frozen=True)
class ContinuityResult:
    c1: Witnessed
    c2: Witnessed

    @property
    def holds(self) -> bool:
        return self.c1.holds and self.c2.holds


@dataclass
class GoldieReport:
    subject: dict
    udim: int
    acc_holds: bool
    acc_max_chain: int
    semiprime: bool
    is_goldie: bool
    continuity: ContinuityResult
    k_nonsingular: Witnessed
    non_m_singular_proxies: dict
    radical_nilpotency: dict
    findings: list
    timings: dict = field(default_factory=dict)

    def to_report(self) -> Report:
        hypotheses = {
            "acc_on_annihilators": {"holds": self.acc_holds,
                                    "max_chain": self.acc_max_chain},
            "continuous": {"holds": self.continuity.holds,
                           "c1": jsonify(self.continuity.c1),
                           "c2": jsonify(self.continuity.c2)},
            "k_nonsingular": jsonify(self.k_nonsingular),
            "non_m_singular_proxies": jsonify(self.non_m_singular_proxies),
            "semiprime": {"holds": self.semiprime},
        }
        report = Report(self.subject, hypotheses, list(self.findings), dict(self.timings))
        report.subject = dict(report.subject)
        report.subject["udim"] = self.udim
        report.subject["is_goldie"] = self.is_goldie
        report.subject["radical_nilpotency"] = jsonify(self.radical_nilpotency)
        return report


def endomorphism_ring(m: FiniteModule, caps: Caps | None = None,
                      endos: tuple | None = None) -> EndoRing:
    """Ring of endomorphisms: pointwise addition, composition as product."""
    caps = effective(caps)
    if endos is None:
        endos = hom_set(m, m, caps)
    n = len(endos)
    if n > caps.endo_order:
        raise CapExceeded("endomorphism ring order", caps.endo_order, n)
    index = {f.image: i for i, f in enumerate(endos)}
    size = m.order
    madd = m.add
    add = [0] * (n * n)
    mul = [0] * (n * n)
    for i, f in enumerate(endos):
        fi = f.image
        for j, g in enumerate(endos):
            gi = g.image
            add[i * n + j] = index[tuple(madd[fi[x] * size + gi[x]] for x in range(size))]
            mul[i * n + j] = index[tuple(fi[gi[x]] for x in range(size))]
    zero = index[tuple([m.zero] * size)]
    one = index[tuple(range(size))]
    ring = FiniteRing(n, tuple(add), tuple(mul), zero, one, f"End({m.name})")
    return EndoRing(m, ring, endos, index)


def _verify_two_sided(r: FiniteRing, elems: frozenset, what: str):
    for a in elems:
        for b in elems:
            if r.a(a, b) not in elems:
                raise AssertionError(f"{what} not additively closed")
        for s in range(r.order):
            if r.m(s, a) not in elems or r.m(a, s) not in elems:
                raise AssertionError(f"{what} not a two-sided ideal")


def jacobson_radical(s: EndoRing) -> Ideal:
    """Quasi-regularity characterization: x with 1 - ax left invertible for
    every a; verified two-sided."""
    r = s.ring
    n = r.order
    left_invertible = [False] * n
    for b in range(n):
        row = b * n
        for y in range(n):
            if r.mul[row + y] == r.one:
                left_invertible[y] = True
    neg = [r.neg(x) for x in range(n)]
    rad = []
    for x in range(n):
        ok = True
        for a in range(n):
            ax = r.m(a, x)
            if not left_invertible[r.a(r.one, neg[ax])]:
                ok = False
                break
        if ok:
            rad.append(x)
    _verify_two_sided(r, frozenset(rad), "Jacobson radical")
    return Ideal(r, tuple(sorted(rad)))


def delta_set(m: FiniteModule, endos: tuple) -> tuple:
    """Indices of endomorphisms with essential kernel."""
    return tuple(i for i, f in enumerate(endos)
                 if is_essential(m, f.kernel()))


def delta_ideal(m: FiniteModule, caps: Caps | None = None,
                endo_ring: EndoRing | None = None) -> Ideal:
    """The essential-kernel endomorphisms, as a verified two-sided ideal."""
    s = endo_ring if endo_ring is not None else endomorphism_ring(m, caps)
    elems = delta_set(m, s.maps)
    _verify_two_sided(s.ring, frozenset(elems), "essential-kernel ideal")
    return Ideal(s.ring, elems)


def right_singular_ideal(s: EndoRing) -> Ideal:
    """Elements whose right annihilator is an essential right ideal.

    Essentiality is tested against principal right ideals, which is exact:
    every nonzero right ideal contains a nonzero principal one.
    """
    r = s.ring
    n = r.order
    mul = r.mul
    z = r.zero
    out = []
    for x in range(n):
        xrow = x * n
        essential = True
        for a in range(n):
            if a == z:
                continue
            arow = a * n
            if not any((at := mul[arow + t]) != z and mul[xrow + at] == z
                       for t in range(n)):
                essential = False
                break
        if essential:
            out.append(x)
    _verify_two_sided(r, frozenset(out), "right singular ideal")
    return Ideal(r, tuple(sorted(out)))


def _ideal_nilpotency(r: FiniteRing, elems: frozenset):
    """Least t with I^t = 0, or None if the power chain stabilizes nonzero."""
    zero_only = frozenset({r.zero})

    def times(a: frozenset, b: frozenset) -> frozenset:
        prods = {r.m(x, y) for x in a for y in b}
        closed = set(prods) | {r.zero}
        frontier = list(closed)
        while frontier:
            u = frontier.pop()
            for v in list(closed):
                w = r.a(u, v)
                if w not in closed:
                    closed.add(w)
                    frontier.append(w)
        return frozenset(closed)

    cur = frozenset(elems) | {r.zero}
    t = 1
    while cur != zero_only:
        nxt = times(cur, frozenset(elems) | {r.zero})
        if nxt == cur:
            return None
        cur = nxt
        t += 1
    return t


def is_continuous(m: FiniteModule, caps: Caps | None = None,
                  ctx: Analysis | None = None) -> ContinuityResult:
    """C1: every submodule is essential in a direct summand.  C2: submodules
    isomorphic to summands are summands.  Counterexamples are returned."""
    ctx = get_analysis(m, caps, ctx)

    def compute():
        subs = ctx.subs
        by_order: dict = {}
        summands = []
        for d in subs:
            need = m.order // len(d)
            complement = None
            if m.order % len(d) == 0:
                dset = set(d.elements)
                for k in subs:
                    if len(k) == need and len(dset & set(k.elements)) == 1:
                        complement = k
                        break
            if complement is not None:
                summands.append(d)
                by_order.setdefault(len(d), []).append(d)
        summand_set = set(summands)
        c1 = Witnessed(True)
        for nsub in subs:
            nset = set(nsub.elements)
            if not any(nset <= set(d.elements) and is_essential_in(m, nsub, d)
                       for d in summands):
                c1 = Witnessed(False, nsub)
                break
        c2 = Witnessed(True)
        for nsub in subs:
            if nsub in summand_set:
                continue
            view_n, _ = ctx.view(nsub)
            for d in by_order.get(len(nsub), []):
                view_d, _ = ctx.view(d)
                if are_isomorphic(view_n, view_d):
                    c2 = Witnessed(False, (nsub, d))
                    break
            if not c2.holds:
                break
        return ContinuityResult(c1, c2)
    return ctx.cache("continuity", compute)


def is_k_nonsingular(m: FiniteModule, caps: Caps | None = None,
                     ctx: Analysis | None = None) -> Witnessed:
    """No nonzero endomorphism has essential kernel; witness is an offender."""
    ctx = get_analysis(m, caps, ctx)

    def compute():
        for f in ctx.endos:
            if not f.is_zero and is_essential(m, f.kernel()):
                return Witnessed(False, f)
        return Witnessed(True)
    return ctx.cache("k_nonsingular", compute)


# ---------------------------------------------------------------------------
# ctx-cached endomorphism ring pieces

def _ctx_endo_ring(ctx: Analysis) -> EndoRing:
    return ctx.cache("endo_ring",
                     lambda: endomorphism_ring(ctx.module, ctx.caps, ctx.endos))


def _ctx_jacobson(ctx: Analysis) -> Ideal:
    return ctx.cache("jacobson", lambda: jacobson_radical(_ctx_endo_ring(ctx)))


def _ctx_delta(ctx: Analysis) -> Ideal:
    return ctx.cache("delta", lambda: delta_ideal(ctx.module, ctx.caps,
                                                  _ctx_endo_ring(ctx)))


def _ctx_zr(ctx: Analysis) -> Ideal:
    return ctx.cache("zr", lambda: right_singular_ideal(_ctx_endo_ring(ctx)))


def _common_kernel(ctx: Analysis, s: EndoRing, elems) -> Submodule:
    m = ctx.module
    kept = set(range(m.order))
    for i in elems:
        img = s.maps[i].image
        kept = {x for x in kept if img[x] == m.zero}
    return ctx.sub(kept)


# ---------------------------------------------------------------------------
# section 3 statement checks

def gate_sp_retractable_acc(ctx: Analysis) -> dict:
    return {"self_projective": bool(ctx.self_projective),
            "retractable": bool(ctx.retractable),
            "acc_on_annihilators": True}


def gate_sp_continuous(ctx: Analysis) -> dict:
    cont = is_continuous(ctx.module, ctx.caps, ctx)
    return {"self_projective": bool(ctx.self_projective),
            "continuous": cont.holds,
            "acc_on_annihilators": True}


def gate_continuous(ctx: Analysis) -> dict:
    return {"continuous": is_continuous(ctx.module, ctx.caps, ctx).holds}


def gate_thm36(ctx: Analysis) -> dict:
    cont = is_continuous(ctx.module, ctx.caps, ctx)
    bs = _ctx_bounded_singular(ctx)
    w = _ctx_mhat(ctx).module
    return {"self_projective": bool(ctx.self_projective),
            "continuous": cont.holds,
            "retractable": bool(ctx.retractable),
            "k_nonsingular": is_k_nonsingular(ctx.module, ctx.caps, ctx).holds,
            "reject_into_hull_zero": reject(ctx.module, w, ctx.caps).is_zero,
            "bounded_singular_zero": bs.value.is_zero,
            "acc_on_annihilators": True}


def _check_zr_in_delta_nilpotent(ctx: Analysis):
    s = _ctx_endo_ring(ctx)
    zr = _ctx_zr(ctx)
    delta = _ctx_delta(ctx)
    if not set(zr.elements) <= set(delta.elements):
        return False, {"zr": list(zr.elements), "delta": list(delta.elements),
                       "reason": "right singular ideal escapes the essential-kernel ideal"}
    t = _ideal_nilpotency(s.ring, frozenset(zr.elements))
    return t is not None, {"zr": list(zr.elements), "nilpotency_index": t}


def _check_essential_kernel_ideals_nilpotent(ctx: Analysis):
    """Every two-sided ideal with essential common kernel is nilpotent, with
    index bounded by the ring order."""
    s = _ctx_endo_ring(ctx)
    m = ctx.module
    for ideal in ideals(s.ring, ctx.caps):
        ck = _common_kernel(ctx, s, ideal.elements)
        if not is_essential(m, ck):
            continue
        t = _ideal_nilpotency(s.ring, frozenset(ideal.elements))
        if t is None or t > s.ring.order:
            return False, {"ideal": list(ideal.elements), "common_kernel": ck,
                           "nilpotency_index": t}
    return True, {}


def _check_jacobson_nilpotent(ctx: Analysis):
    s = _ctx_endo_ring(ctx)
    j = _ctx_jacobson(ctx)
    t = _ideal_nilpotency(s.ring, frozenset(j.elements))
    return t is not None, {"jacobson": list(j.elements), "nilpotency_index": t}


def _check_continuous_radical_identities(ctx: Analysis):
    """For continuous modules the radical is the essential-kernel ideal and
    the kernel-essential image sum is its trace on the module."""
    s = _ctx_endo_ring(ctx)
    j = _ctx_jacobson(ctx)
    delta = _ctx_delta(ctx)
    if j.elements != delta.elements:
        return False, {"jacobson": list(j.elements), "delta": list(delta.elements)}
    m = ctx.module
    pieces = set()
    for i in j.elements:
        pieces.update(s.maps[i].image)
    jm = submodule_generate(m, pieces)
    zk = _ctx_k_singular(ctx)
    if jm != zk:
        return False, {"radical_trace": jm, "k_singular": zk}
    return True, {}


def _check_semiprime_goldie(ctx: Analysis):
    """Continuity, retractability, and non-singularity force a semiprime
    Goldie module."""
    semiprime = module_semiprime(ctx).holds
    goldie = True  # ACC and finite uniform dimension are automatic here
    udim = ctx.udim
    return semiprime and goldie, {"semiprime": semiprime, "udim": udim}


ENDO_STATEMENTS = (
    Statement("Cor2.30", "right singular ideal of the endomorphism ring is nilpotent",
              gate_sp_retractable_acc, _check_zr_in_delta_nilpotent),
    Statement("Cor2.31", "ideals with essential common kernel are nilpotent",
              gate_sp, _check_essential_kernel_ideals_nilpotent),
    Statement("Prop3.5", "the radical is nilpotent for continuous modules",
              gate_sp_continuous, _check_jacobson_nilpotent),
    Statement("Rem3.4", "radical equals essential-kernel ideal on continuous modules",
              gate_continuous, _check_continuous_radical_identities),
    Statement("Thm3.6", "continuous retractable non-singular modules are semiprime Goldie",
              gate_thm36, _check_semiprime_goldie),
)


def goldie_report(m: FiniteModule, caps: Caps | None = None,
                  ctx: Analysis | None = None) -> GoldieReport:
    """Assemble dimensions, chain statistics, continuity, nonsingularity, and
    the radical-nilpotency statement verdicts."""
    ctx = get_analysis(m, caps, ctx)
    cont = is_continuous(m, caps, ctx)
    k_ns = is_k_nonsingular(m, caps, ctx)
    bs = _ctx_bounded_singular(ctx)
    w = _ctx_mhat(ctx).module
    proxies = {
        "k_nonsingular": k_ns.holds,
        "reject_into_hull_zero": reject(m, w, ctx.caps).is_zero,
        "bounded_singular_zero": bs.value.is_zero,
        "bounded_singular_depth_exact": bs.exact,
    }
    findings = []
    timings = {}
    for stmt in ENDO_STATEMENTS:
        t0 = time.perf_counter()
        findings.append(run_statement(stmt, ctx))
        timings[stmt.id] = (time.perf_counter() - t0) * 1000.0

    radical = {}
    try:
        s = _ctx_endo_ring(ctx)
        for name, ideal in (("delta", _ctx_delta(ctx)),
                            ("right_singular", _ctx_zr(ctx)),
                            ("jacobson", _ctx_jacobson(ctx))):
            radical[name] = {"elements": list(ideal.elements),
                             "nilpotency_index": _ideal_nilpotency(
                                 s.ring, frozenset(ideal.elements))}
    except CapExceeded as e:
        radical["cap_exceeded"] = str(e)

    return GoldieReport(
        subject=subject_of(ctx),
        udim=ctx.udim,
        acc_holds=True,
        acc_max_chain=ctx.annihilator_set().longest_chain(),
        semiprime=module_semiprime(ctx).holds,
        is_goldie=True,
        continuity=cont,
        k_nonsingular=k_ns,
        non_m_singular_proxies=proxies,
        radical_nilpotency=radical,
        findings=findings,
        timings=timings,
    )
