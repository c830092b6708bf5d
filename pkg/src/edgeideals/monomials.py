"""Square-free monomials and minimally generated square-free monomial ideals.

A monomial is just a set of variable indices (stored as a bitmask); the
ambient variable count lives on the ideal so generators re-embed cleanly
when the ambient grows (whiskering appends variables).
"""

from __future__ import annotations

from itertools import combinations

from .errors import InputError
from .graphs import Graph, minimal_vertex_covers, _bits, _mask_of

__all__ = [
    "Monomial",
    "MonomialIdeal",
    "minimalize",
    "edge_ideal",
    "alexander_dual_of_edge_ideal",
    "squarefree_degree_component",
    "colon_by_monomial",
]


class Monomial:
    """Square-free monomial, identified with its support set."""

    __slots__ = ("mask",)

    def __init__(self, variables=()):
        if isinstance(variables, Monomial):
            self.mask = variables.mask
            return
        mask = 0
        for v in variables:
            if v < 0:
                raise InputError(f"negative variable index {v}")
            mask |= 1 << v
        self.mask = mask

    @classmethod
    def from_mask(cls, mask: int) -> "Monomial":
        m = object.__new__(cls)
        m.mask = mask
        return m

    @property
    def support(self) -> frozenset:
        return frozenset(_bits(self.mask))

    @property
    def degree(self) -> int:
        return bin(self.mask).count("1")

    def divides(self, other: "Monomial") -> bool:
        return self.mask & ~other.mask == 0

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial.from_mask(self.mask & other.mask)

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial.from_mask(self.mask | other.mask)

    def colon(self, other: "Monomial") -> "Monomial":
        """self / gcd(self, other): the support difference."""
        return Monomial.from_mask(self.mask & ~other.mask)

    def times(self, other: "Monomial") -> "Monomial":
        if self.mask & other.mask:
            raise InputError("product is not square-free")
        return Monomial.from_mask(self.mask | other.mask)

    @property
    def sort_key(self) -> tuple:
        return (self.degree, tuple(_bits(self.mask)))

    def names(self, labels) -> list:
        return [labels[v] for v in _bits(self.mask)]

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.mask == other.mask

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        if self.mask == 0:
            return "Monomial(1)"
        return "Monomial(" + ",".join(f"x{v + 1}" for v in _bits(self.mask)) + ")"


class MonomialIdeal:
    """Minimally generated square-free monomial ideal.

    Generators are stored in canonical order (degree, then lexicographic on
    sorted supports).  The zero ideal has no generators; the unit ideal has
    the single generator 1.
    """

    __slots__ = ("ambient", "gens")

    def __init__(self, ambient: int, gens):
        gens = tuple(gens)
        full = (1 << ambient) - 1
        for g in gens:
            if g.mask & ~full:
                raise InputError("generator outside ambient variables")
        if list(gens) != sorted(gens, key=lambda g: g.sort_key):
            raise InputError("generators not in canonical order")
        if len({g.mask for g in gens}) != len(gens):
            raise InputError("duplicate generators")
        # distinct monomials of equal degree never divide each other
        if gens and gens[0].degree != gens[-1].degree:
            for i, g in enumerate(gens):
                for h in gens[i + 1:]:
                    if h.degree > g.degree and g.divides(h):
                        raise InputError("generators are not minimal")
        self.ambient = ambient
        self.gens = gens

    @classmethod
    def from_generators(cls, ambient: int, gens) -> "MonomialIdeal":
        """Minimalize and sort an arbitrary generating set."""
        masks = sorted({Monomial(g).mask if not isinstance(g, Monomial) else g.mask for g in gens},
                       key=lambda m: bin(m).count("1"))
        kept = []
        for m in masks:
            if not any(k & ~m == 0 for k in kept):
                kept.append(m)
        out = [Monomial.from_mask(m) for m in kept]
        out.sort(key=lambda g: g.sort_key)
        return cls(ambient, out)

    @classmethod
    def zero(cls, ambient: int) -> "MonomialIdeal":
        return cls(ambient, ())

    @classmethod
    def unit(cls, ambient: int) -> "MonomialIdeal":
        return cls(ambient, (Monomial(()),))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and self.gens[0].mask == 0

    @property
    def min_degree(self):
        return min((g.degree for g in self.gens), default=None)

    @property
    def max_degree(self):
        return max((g.degree for g in self.gens), default=None)

    @property
    def is_equigenerated(self) -> bool:
        return self.min_degree == self.max_degree

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def gen_masks(self) -> list:
        return [g.mask for g in self.gens]

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.ambient == other.ambient and self.gens == other.gens

    def __hash__(self):
        return hash((self.ambient, self.gens))

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return f"MonomialIdeal(ambient={self.ambient}, gens={list(self.gens)})"

    def to_json(self, labels=None) -> dict:
        if labels is None:
            labels = [f"x{i + 1}" for i in range(self.ambient)]
        return {
            "ambient": self.ambient,
            "vars": list(labels),
            "gens": [g.names(labels) for g in self.gens],
        }

    @classmethod
    def from_json(cls, data) -> "MonomialIdeal":
        try:
            ambient = int(data["ambient"])
            names = list(data["vars"])
            gens = data["gens"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad ideal JSON: {exc}") from None
        if len(names) != ambient:
            raise InputError("vars length does not match ambient")
        index = {name: i for i, name in enumerate(names)}
        out = []
        for gen in gens:
            try:
                out.append(Monomial(index[v] for v in gen))
            except KeyError as exc:
                raise InputError(f"unknown variable {exc} in ideal JSON") from None
        return cls(ambient, out)


def minimalize(ambient: int, gens) -> MonomialIdeal:
    """Divisibility-minimal sublist in canonical order."""
    return MonomialIdeal.from_generators(ambient, gens)


def edge_ideal(G: Graph) -> MonomialIdeal:
    """One degree-two generator x_u x_v per edge of G."""
    gens = [Monomial((u, v)) for u, v in G.edges()]
    return MonomialIdeal.from_generators(G.n, gens)


def alexander_dual_of_edge_ideal(G: Graph) -> MonomialIdeal:
    """Generators are the minimal vertex covers of G.

    For an edgeless graph the empty set is the unique minimal cover, so the
    dual is the unit ideal.
    """
    gens = [Monomial(c) for c in minimal_vertex_covers(G)]
    return MonomialIdeal.from_generators(G.n, gens)


def squarefree_degree_component(I: MonomialIdeal, d: int) -> MonomialIdeal:
    """Ideal generated by all square-free degree-d monomials lying in I."""
    if d < 0:
        raise InputError("degree must be nonnegative")
    masks = set()
    full = (1 << I.ambient) - 1
    for g in I.gens:
        k = d - g.degree
        if k < 0:
            continue
        others = list(_bits(full & ~g.mask))
        for extra in combinations(others, k):
            masks.add(g.mask | _mask_of(extra))
    gens = sorted((Monomial.from_mask(m) for m in masks), key=lambda g: g.sort_key)
    return MonomialIdeal(I.ambient, gens)


def colon_by_monomial(I: MonomialIdeal, u: Monomial) -> MonomialIdeal:
    """I : (u), minimally generated."""
    return MonomialIdeal.from_generators(I.ambient, [g.colon(u) for g in I.gens])
