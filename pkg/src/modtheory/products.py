"""The product of submodules, powers, and annihilators.

The product of K and L inside M sums the images of K under every map
M -> L.  Maps into a submodule L are realized as endomorphisms of M whose
image lies in L; the two views are the same set of maps and the endomorphism
set is computed once per module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .caps import Caps, effective
from .errors import VerificationFailure
from .modules import (FiniteModule, Homomorphism, Submodule, Witnessed,
                      distinct_cyclics, hom_set, submodule_generate,
                      sum_elements)


@dataclass(frozen=True)
class ProductResult:
    value: Submodule
    contributing_maps: tuple  # endomorphisms of the parent with image inside L


@dataclass(frozen=True)
class AnnihilatorSet:
    """Intersection closure of endomorphism kernels.

    Finite posets always satisfy the ascending chain condition, so acc_holds
    is constant true; the informative datum at this scale is the poset itself,
    summarized by its longest chain.
    """

    module: FiniteModule
    members: tuple  # Submodule values, sorted by (size, elements)
    acc_holds: bool = True

    def longest_chain(self) -> int:
        ordered = sorted(self.members, key=lambda s: (len(s), s.elements))
        best = [1] * len(ordered)
        for i, s in enumerate(ordered):
            si = set(s.elements)
            for j in range(i):
                if set(ordered[j].elements) < si:
                    best[i] = max(best[i], best[j] + 1)
        return max(best, default=0)

    def __contains__(self, sub: Submodule) -> bool:
        return sub in set(self.members)


def maps_into(m: FiniteModule, l: Submodule, endos: tuple) -> tuple:
    """Homomorphisms M -> L, as endomorphisms of M with image inside L."""
    lset = set(l.elements)
    return tuple(f for f in endos if set(f.image) <= lset)


def _endos(m: FiniteModule, endos: tuple | None, caps: Caps | None) -> tuple:
    return hom_set(m, m, effective(caps)) if endos is None else endos


def product(m: FiniteModule, k: Submodule, l: Submodule,
            caps: Caps | None = None, endos: tuple | None = None) -> ProductResult:
    """K_M L: the sum of f(K) over all maps f from M into L."""
    endos = _endos(m, endos, caps)
    maps = maps_into(m, l, endos)
    pieces = set()
    for f in maps:
        pieces.update(f.image[x] for x in k.elements)
    return ProductResult(submodule_generate(m, pieces), maps)


def power(m: FiniteModule, n: Submodule, k: int,
          right_normed: bool = False, caps: Caps | None = None,
          endos: tuple | None = None) -> Submodule:
    """Iterated product N^k; left-normed N^k = N_M(N^{k-1}) by default.

    The right-normed variant (N^{k-1})_M N is exposed behind a flag because
    the two genuinely differ on non-self-projective modules.
    """
    if k < 1:
        raise ValueError("power requires k >= 1")
    endos = _endos(m, endos, caps)
    cur = n
    for _ in range(k - 1):
        if right_normed:
            cur = product(m, cur, n, caps, endos).value
        else:
            cur = product(m, n, cur, caps, endos).value
    return cur


def ann_left(m: FiniteModule, n: Submodule,
             caps: Caps | None = None, endos: tuple | None = None) -> Submodule:
    """Intersection of the kernels of all maps M -> N; equals M when only the
    zero map exists."""
    endos = _endos(m, endos, caps)
    maps = maps_into(m, n, endos)
    z = m.zero
    kept = [x for x in range(m.order)
            if all(f.image[x] == z for f in maps)]
    return Submodule(m, tuple(kept))


def ann_right(m: FiniteModule, n: Submodule,
              caps: Caps | None = None, endos: tuple | None = None) -> Submodule:
    """Largest L with N_M L = 0, as the sum of all annihilated cyclics.

    The sum is re-verified: without self-projectivity the sum of annihilated
    submodules need not stay annihilated, and that failure must surface as an
    explicit error rather than a wrong value.
    """
    endos = _endos(m, endos, caps)
    zero_sub = Submodule(m, (m.zero,))
    total = frozenset({m.zero})
    for c in distinct_cyclics(m):
        if len(c) == 1:
            continue
        csub = Submodule(m, tuple(sorted(c)))
        if product(m, n, csub, caps, endos).value == zero_sub:
            total = sum_elements(m, total, c)
    candidate = Submodule(m, tuple(sorted(total)))
    if product(m, n, candidate, caps, endos).value != zero_sub:
        raise VerificationFailure(
            f"sum of annihilated cyclics is not annihilated by {n!r}")
    return candidate


def annihilator_set(m: FiniteModule, caps: Caps | None = None,
                    endos: tuple | None = None) -> AnnihilatorSet:
    """Closure of endomorphism kernels under intersection, plus M itself.

    Intersections over arbitrary endomorphism subsets are exactly the
    pairwise-intersection closure of the single kernels.
    """
    endos = _endos(m, endos, caps)
    kernels = {frozenset(f.kernel().elements) for f in endos}
    kernels.add(frozenset(range(m.order)))  # empty subset of End(M)
    members = set(kernels)
    frontier = list(members)
    while frontier:
        a = frontier.pop()
        for b in list(members):
            c = a & b
            if c not in members:
                members.add(c)
                frontier.append(c)
    subs = tuple(Submodule(m, tuple(sorted(s)))
                 for s in sorted(members, key=lambda s: (len(s), sorted(s))))
    return AnnihilatorSet(m, subs)


def is_annihilator_submodule(m: FiniteModule, n: Submodule,
                             caps: Caps | None = None, endos: tuple | None = None,
                             subs: tuple | None = None) -> Witnessed:
    """Exhaustive search for K with Ann_M(K) = N; the witness is K."""
    from .modules import all_submodules
    endos = _endos(m, endos, caps)
    if subs is None:
        subs = all_submodules(m, effective(caps))
    for k in subs:
        if ann_left(m, k, caps, endos) == n:
            return Witnessed(True, k)
    return Witnessed(False)


def is_nilpotent_submodule(m: FiniteModule, n: Submodule,
                           caps: Caps | None = None,
                           endos: tuple | None = None) -> Witnessed:
    """Iterate powers until zero or stabilization; witness is the least k
    with N^k = 0, or the stable nonzero power on failure."""
    endos = _endos(m, endos, caps)
    cur = n
    k = 1
    while True:
        if cur.is_zero:
            return Witnessed(True, k)
        nxt = product(m, n, cur, caps, endos).value
        if nxt == cur:
            return Witnessed(False, cur)
        cur = nxt
        k += 1


def is_tm_nilpotent(m: FiniteModule, n: Submodule,
                    caps: Caps | None = None,
                    endos: tuple | None = None) -> Witnessed:
    """Transfinite-nilpotence test on the map graph.

    Nodes are the nonzero elements of N, with an edge x -> f(x) for every map
    f from M into N that does not kill x.  Some composition chain stays
    nonzero forever exactly when a node of N reaches a cycle; the witness is
    the cycle.
    """
    endos = _endos(m, endos, caps)
    maps = maps_into(m, n, endos)
    z = m.zero
    nodes = [x for x in n.elements if x != z]
    adj = {x: sorted({f.image[x] for f in maps} - {z}) for x in nodes}
    color = {x: 0 for x in nodes}  # 0 white, 1 on stack, 2 done
    for s in nodes:
        if color[s]:
            continue
        path = [s]
        stack = [(s, iter(adj[s]))]
        color[s] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for v in it:
                if color[v] == 1:
                    i = path.index(v)
                    return Witnessed(False, tuple(path[i:]))
                if color[v] == 0:
                    color[v] = 1
                    path.append(v)
                    stack.append((v, iter(adj[v])))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                path.pop()
                stack.pop()
    return Witnessed(True)
