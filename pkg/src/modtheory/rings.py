"""Finite rings with unity as explicit Cayley tables.

Elements are dense indices ``0..order-1``; addition and multiplication are
flat row-major tuples so the exhaustive axiom loops stay cheap.  Constructed
rings order their elements lexicographically on component tuples, which keeps
fixtures reproducible and hashing stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct

from .caps import Caps, effective
from .errors import AxiomViolation, CapExceeded


@dataclass(frozen=True)
class FiniteRing:
    order: int
    add: tuple  # flat row-major: add[i*order+j]
    mul: tuple
    zero: int
    one: int
    name: str = "R"
    labels: tuple = field(default=(), compare=False)

    def a(self, i: int, j: int) -> int:
        return self.add[i * self.order + j]

    def m(self, i: int, j: int) -> int:
        return self.mul[i * self.order + j]

    def neg(self, i: int) -> int:
        row = i * self.order
        for j in range(self.order):
            if self.add[row + j] == self.zero:
                return j
        raise AxiomViolation("additive inverse", (i,))

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def add_rows(self) -> list:
        n = self.order
        return [list(self.add[i * n:(i + 1) * n]) for i in range(n)]

    def mul_rows(self) -> list:
        n = self.order
        return [list(self.mul[i * n:(i + 1) * n]) for i in range(n)]

    def __repr__(self):
        return f"FiniteRing({self.name}, order={self.order})"


@dataclass(frozen=True)
class Ideal:
    """Two-sided ideal, stored as a canonical sorted index set."""

    ring: FiniteRing
    elements: tuple

    def __contains__(self, i: int) -> bool:
        return i in self._set

    @property
    def _set(self):
        return frozenset(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Ideal({self.ring.name}, {list(self.elements)})"


def _flatten(table, order: int, what: str) -> tuple:
    if not table or len(table) == 0:
        raise AxiomViolation(f"{what} table empty", ())
    if isinstance(table[0], (list, tuple)):
        if len(table) != order or any(len(row) != order for row in table):
            raise AxiomViolation(f"{what} table not square", (len(table),))
        flat = tuple(int(v) for row in table for v in row)
    else:
        if len(table) != order * order:
            raise AxiomViolation(f"{what} table not square", (len(table),))
        flat = tuple(int(v) for v in table)
    if any(v < 0 or v >= order for v in flat):
        bad = next(v for v in flat if v < 0 or v >= order)
        raise AxiomViolation(f"{what} index out of range", (bad,))
    return flat


def _abelian_group_check(order: int, add: tuple, what: str) -> int:
    """Verify (add, zero) is an abelian group; returns the identity index."""
    zero = None
    for e in range(order):
        if all(add[e * order + x] == x for x in range(order)):
            zero = e
            break
    if zero is None:
        raise AxiomViolation(f"{what}: no additive identity", ())
    for a in range(order):
        row = a * order
        for b in range(order):
            if add[row + b] != add[b * order + a]:
                raise AxiomViolation(f"{what}: addition not commutative", (a, b))
    for a in range(order):
        for b in range(order):
            ab = add[a * order + b]
            for c in range(order):
                if add[ab * order + c] != add[a * order + add[b * order + c]]:
                    raise AxiomViolation(f"{what}: addition not associative", (a, b, c))
    for a in range(order):
        row = a * order
        if all(add[row + b] != zero for b in range(order)):
            raise AxiomViolation(f"{what}: no additive inverse", (a,))
    return zero


def validate_ring(add, mul, name: str = "R", labels=(), caps: Caps | None = None) -> FiniteRing:
    """Check every ring axiom exhaustively and return the ring, or raise AxiomViolation.

    Tables may be given nested (rows) or flat row-major.  Axioms checked by
    triple loops: abelian addition, associative multiplication, two-sided
    unity, two-sided distributivity, and zero annihilation.
    """
    caps = effective(caps)
    if isinstance(add[0], (list, tuple)):
        order = len(add)
    else:
        order = int(round(len(add) ** 0.5))
    if order > caps.ring_order:
        raise CapExceeded("ring order", caps.ring_order, order)
    fadd = _flatten(add, order, "add")
    fmul = _flatten(mul, order, "mul")
    zero = _abelian_group_check(order, fadd, "ring")
    one = None
    for e in range(order):
        if all(fmul[e * order + x] == x == fmul[x * order + e] for x in range(order)):
            one = e
            break
    if one is None:
        raise AxiomViolation("no two-sided unity", ())
    for a in range(order):
        for b in range(order):
            ab = fmul[a * order + b]
            for c in range(order):
                if fmul[ab * order + c] != fmul[a * order + fmul[b * order + c]]:
                    raise AxiomViolation("associativity", (a, b, c))
    for a in range(order):
        for b in range(order):
            bc_row = fadd[b * order:(b + 1) * order]
            for c in range(order):
                s = bc_row[c]
                if fmul[a * order + s] != fadd[fmul[a * order + b] * order + fmul[a * order + c]]:
                    raise AxiomViolation("left distributivity", (a, b, c))
                if fmul[s * order + a] != fadd[fmul[b * order + a] * order + fmul[c * order + a]]:
                    raise AxiomViolation("right distributivity", (a, b, c))
    for a in range(order):
        if fmul[zero * order + a] != zero or fmul[a * order + zero] != zero:
            raise AxiomViolation("zero annihilation", (a,))
    return FiniteRing(order, fadd, fmul, zero, one, name, tuple(labels))


def ring_cyclic(n: int, name: str | None = None) -> FiniteRing:
    """The ring of integers mod n.  n=1 gives the zero ring (one == zero)."""
    if n < 1:
        raise ValueError("n must be positive")
    add = tuple((i + j) % n for i in range(n) for j in range(n))
    mul = tuple((i * j) % n for i in range(n) for j in range(n))
    return FiniteRing(n, add, mul, 0, 1 % n, name or f"Z{n}",
                      tuple(str(i) for i in range(n)))


def ring_product(a: FiniteRing, b: FiniteRing, name: str | None = None) -> FiniteRing:
    """Direct product ring, elements ordered lexicographically as (a, b) pairs."""
    n = a.order * b.order
    idx = lambda i, j: i * b.order + j
    add = [0] * (n * n)
    mul = [0] * (n * n)
    for i1 in range(a.order):
        for j1 in range(b.order):
            p = idx(i1, j1)
            for i2 in range(a.order):
                for j2 in range(b.order):
                    q = idx(i2, j2)
                    add[p * n + q] = idx(a.a(i1, i2), b.a(j1, j2))
                    mul[p * n + q] = idx(a.m(i1, i2), b.m(j1, j2))
    labels = tuple(f"({a.label(i)},{b.label(j)})"
                   for i in range(a.order) for j in range(b.order))
    return FiniteRing(n, tuple(add), tuple(mul), idx(a.zero, b.zero),
                      idx(a.one, b.one), name or f"{a.name}x{b.name}", labels)


def ring_trivial_extension(a: FiniteRing, bimodule_rank: int,
                           name: str | None = None) -> FiniteRing:
    """Trivial extension of a cyclic ring by a free square-zero bimodule.

    Elements are tuples (s, x_1..x_k) over the base, ordered lexicographically;
    multiplication is (s, x)(t, y) = (st, sy + xt).
    """
    if bimodule_rank < 1:
        raise ValueError("bimodule_rank must be positive")
    base = a.order
    k = bimodule_rank
    n = base ** (1 + k)
    elems = list(iproduct(range(base), repeat=1 + k))
    index = {e: i for i, e in enumerate(elems)}
    add = [0] * (n * n)
    mul = [0] * (n * n)
    for i, e in enumerate(elems):
        for j, f in enumerate(elems):
            add[i * n + j] = index[tuple(a.a(x, y) for x, y in zip(e, f))]
            s, t = e[0], f[0]
            prod = (a.m(s, t),) + tuple(
                a.a(a.m(s, f[c]), a.m(e[c], t)) for c in range(1, 1 + k))
            mul[i * n + j] = index[prod]
    zero = index[tuple([a.zero] * (1 + k))]
    one = index[(a.one,) + tuple([a.zero] * k)]
    labels = tuple("(" + "|".join(a.label(x) for x in e) + ")" for e in elems)
    return FiniteRing(n, tuple(add), tuple(mul), zero, one,
                      name or f"{a.name}~{k}", labels)


def ring_quotient_with_map(r: FiniteRing, ideal: Ideal, name: str | None = None):
    """Quotient by a two-sided ideal plus the coset representative list.

    Representatives are least indices; reps[i] is the representative of the
    i-th quotient element.
    """
    iset = set(ideal.elements)
    rep = {}
    for x in range(r.order):
        if x in rep:
            continue
        coset = sorted(r.a(x, i) for i in iset)
        m = coset[0]
        for y in coset:
            rep[y] = m
    reps = sorted(set(rep.values()))
    pos = {x: i for i, x in enumerate(reps)}
    n = len(reps)
    add = tuple(pos[rep[r.a(x, y)]] for x in reps for y in reps)
    mul = tuple(pos[rep[r.m(x, y)]] for x in reps for y in reps)
    labels = tuple(r.label(x) + "~" for x in reps)
    ring = FiniteRing(n, add, mul, pos[rep[r.zero]], pos[rep[r.one]],
                      name or f"{r.name}/I{len(ideal)}", labels)
    return ring, reps


def ring_quotient(r: FiniteRing, ideal: Ideal, name: str | None = None) -> FiniteRing:
    """Quotient by a two-sided ideal; coset representatives are least indices."""
    return ring_quotient_with_map(r, ideal, name)[0]


def _principal_ideal(r: FiniteRing, x: int) -> frozenset:
    """Two-sided ideal generated by x: closure under add and both mults."""
    seen = {r.zero, x}
    changed = True
    while changed:
        changed = False
        cur = list(seen)
        for y in cur:
            for s in range(r.order):
                for v in (r.m(s, y), r.m(y, s)):
                    if v not in seen:
                        seen.add(v)
                        changed = True
            for a in cur:
                v = r.a(a, y)
                if v not in seen:
                    seen.add(v)
                    changed = True
    return frozenset(seen)


@lru_cache(maxsize=128)
def ideals(r: FiniteRing, caps: Caps | None = None) -> tuple:
    """All two-sided ideals, canonical and sorted by (size, elements).

    Breadth-first closure: every ideal is a join of principal ideals, so
    starting from 0 and repeatedly joining principals reaches the whole
    lattice.
    """
    caps = effective(caps)
    principals = sorted({_principal_ideal(r, x) for x in range(r.order)},
                        key=lambda s: (len(s), sorted(s)))
    zero = frozenset({r.zero})
    seen = {zero}
    queue = [zero]
    while queue:
        cur = queue.pop()
        for p in principals:
            if p <= cur:
                continue
            # sum of two ideals is elementwise addition (already mult-closed)
            join = frozenset(r.a(x, y) for x in cur for y in p)
            if join not in seen:
                if len(seen) >= caps.lattice_breadth:
                    raise CapExceeded("ideal lattice breadth",
                                      caps.lattice_breadth, len(seen) + 1)
                seen.add(join)
                queue.append(join)
    return tuple(Ideal(r, tuple(sorted(s)))
                 for s in sorted(seen, key=lambda s: (len(s), sorted(s))))
