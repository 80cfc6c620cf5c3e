"""Per-module analysis context.

All the verifiers quantify over the same submodule lattice, endomorphism set,
and product/annihilator tables, so those are computed once per module and
memoized here.  Results are identical to cache-free execution; errors (cap
overruns, failed verification passes) are memoized and re-raised so a capped
computation is not retried statement by statement.

``corrupt_product`` deliberately mis-computes the submodule product.  It
exists only for the fuzz harness self-test, which must demonstrate that a
wrong implementation produces VIOLATION verdicts.
"""

from __future__ import annotations

from functools import lru_cache

from .caps import Caps, effective
from .errors import NotFullyInvariant
from .modules import (FiniteModule, Submodule, Witnessed, all_submodules,
                      hom_set, is_essential, is_fully_invariant,
                      is_retractable, is_self_projective, is_uniform,
                      socle, submodule_module, sum_submodules,
                      uniform_dimension)
from . import products


class Analysis:
    def __init__(self, module: FiniteModule, caps: Caps | None = None,
                 corrupt_product: bool = False):
        self.module = module
        self.caps = effective(caps)
        self.corrupt_product = corrupt_product
        self._memo: dict = {}

    # -- generic memo with error capture ------------------------------------

    def cache(self, key, thunk):
        hit = self._memo.get(key)
        if hit is None:
            try:
                hit = ("ok", thunk())
            except Exception as e:  # memoize caps/verification failures too
                hit = ("err", e)
            self._memo[key] = hit
        tag, payload = hit
        if tag == "err":
            raise payload
        return payload

    # -- module-level basics -------------------------------------------------

    @property
    def zero_sub(self) -> Submodule:
        return Submodule(self.module, (self.module.zero,))

    @property
    def whole_sub(self) -> Submodule:
        return Submodule(self.module, tuple(range(self.module.order)))

    @property
    def subs(self) -> tuple:
        return self.cache("subs", lambda: all_submodules(self.module, self.caps))

    @property
    def endos(self) -> tuple:
        return self.cache("endos", lambda: hom_set(self.module, self.module, self.caps))

    @property
    def fi_subs(self) -> tuple:
        return self.cache("fi_subs", lambda: tuple(
            k for k in self.subs
            if is_fully_invariant(self.module, k, self.endos)))

    def view(self, k: Submodule):
        """Submodule as a standalone module, plus inclusion; memoized."""
        return self.cache(("view", k.elements),
                          lambda: submodule_module(self.module, k))

    def sub(self, elements) -> Submodule:
        return Submodule(self.module, tuple(sorted(elements)))

    # -- products and annihilators -------------------------------------------

    def product(self, k: Submodule, l: Submodule) -> products.ProductResult:
        def compute():
            if self.corrupt_product:
                # wrong on purpose: the sum K + L instead of the map-image sum
                return products.ProductResult(
                    sum_submodules(self.module, k, l), ())
            return products.product(self.module, k, l, self.caps, self.endos)
        return self.cache(("product", k.elements, l.elements), compute)

    def product_value(self, k: Submodule, l: Submodule) -> Submodule:
        return self.product(k, l).value

    def power(self, n: Submodule, k: int, right_normed: bool = False) -> Submodule:
        cur = n
        for _ in range(k - 1):
            cur = (self.product_value(cur, n) if right_normed
                   else self.product_value(n, cur))
        return cur

    def stable_power(self, n: Submodule) -> Submodule:
        """Limit of the descending power chain N >= N^2 >= ..."""
        cur = n
        while True:
            nxt = self.product_value(n, cur)
            if nxt == cur:
                return cur
            cur = nxt

    def ann_left(self, n: Submodule) -> Submodule:
        return self.cache(("ann_left", n.elements),
                          lambda: products.ann_left(self.module, n, self.caps, self.endos))

    def ann_right(self, n: Submodule) -> Submodule:
        def compute():
            if self.corrupt_product:
                total = frozenset({self.module.zero})
                for c in self.subs:
                    if self.product_value(n, c).is_zero:
                        total = frozenset(sum_submodules(self.module, self.sub(total), c).elements)
                return self.sub(total)
            return products.ann_right(self.module, n, self.caps, self.endos)
        return self.cache(("ann_right", n.elements), compute)

    def annihilator_set(self) -> products.AnnihilatorSet:
        return self.cache("annihilator_set",
                          lambda: products.annihilator_set(self.module, self.caps, self.endos))

    def is_nilpotent(self, n: Submodule) -> Witnessed:
        def compute():
            cur = n
            k = 1
            while True:
                if cur.is_zero:
                    return Witnessed(True, k)
                nxt = self.product_value(n, cur)
                if nxt == cur:
                    return Witnessed(False, cur)
                cur = nxt
                k += 1
        return self.cache(("nilpotent", n.elements), compute)

    # -- structural predicates -----------------------------------------------

    @property
    def self_projective(self) -> Witnessed:
        return self.cache("self_projective", lambda: is_self_projective(
            self.module, self.caps, self.endos, self.subs))

    @property
    def retractable(self) -> Witnessed:
        return self.cache("retractable",
                          lambda: is_retractable(self.module, self.caps))

    @property
    def socle(self) -> Submodule:
        return self.cache("socle", lambda: socle(self.module))

    @property
    def udim(self) -> int:
        return self.cache("udim", lambda: uniform_dimension(self.module))

    @property
    def uniform_subs(self) -> tuple:
        return self.cache("uniform_subs", lambda: tuple(
            u for u in self.subs if is_uniform(self.module, u)))

    def essential(self, k: Submodule) -> bool:
        return self.cache(("essential", k.elements),
                          lambda: is_essential(self.module, k))

    def fully_invariant(self, k: Submodule) -> bool:
        return self.cache(("fi", k.elements),
                          lambda: is_fully_invariant(self.module, k, self.endos))

    def require_fully_invariant(self, k: Submodule):
        if not self.fully_invariant(k):
            raise NotFullyInvariant(f"{k!r} is not fully invariant")


@lru_cache(maxsize=64)
def _shared(module: FiniteModule, caps: Caps | None) -> Analysis:
    return Analysis(module, caps)


def get_analysis(module: FiniteModule, caps: Caps | None = None,
                 ctx: Analysis | None = None) -> Analysis:
    """Shared per-module context; an explicitly passed ctx always wins."""
    if ctx is not None:
        return ctx
    return _shared(module, caps)
