"""Linear-quotients certificates for square-free monomial ideals.

A certificate is an ordering of the generators together with, for each
position, the set of variables generating the colon ideal of the prefix.
Certificates are checkable in O(r^2) bit operations, so every order found
here -- whether by exact search or by the constructive whisker recursion --
is verified before it is trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, SearchBudgetExceeded
from .graphs import Graph, induced_subgraph, _bits, _covers_by_size
from .monomials import Monomial, MonomialIdeal

__all__ = [
    "QuotientOrder",
    "DLQReport",
    "WhiskerSplit",
    "make_order",
    "verify_order",
    "find_order",
    "dual_component_order",
    "has_dual_linear_quotients",
    "whisker_order",
    "whisker_split",
    "search_stats",
    "reset_search_stats",
]


# statistics for the greedy-vs-backtracking open question; purely informational
search_stats = {
    "identity": 0,      # canonical order already had linear quotients
    "structural": 0,    # constructive whisker/extension order verified
    "greedy": 0,        # exact search succeeded with no backtracking
    "backtracked": 0,   # exact search succeeded after backtracking
    "exhausted": 0,     # exact search proved no order exists
}


def reset_search_stats():
    for k in search_stats:
        search_stats[k] = 0


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _step_linear(prefix_masks, u: int):
    """Is the colon of the prefix by u generated by single variables?

    Returns (ok, v1) where v1 is the union of the single-variable colon
    generators.  The colon generators are the supports p \\ u; the ideal they
    generate is variable-generated exactly when every difference meets v1.
    """
    nu = ~u
    v1 = 0
    diffs = []
    for p in prefix_masks:
        dmask = p & nu
        diffs.append(dmask)
        if dmask & (dmask - 1) == 0:
            v1 |= dmask
    for dmask in diffs:
        if not dmask & v1:
            return False, v1
    return True, v1


def _sequence_colon_vars(masks):
    """Per-position v1 masks for a generator sequence, plus overall linearity."""
    vars_out = [0] * len(masks)
    ok = True
    for i in range(1, len(masks)):
        step_ok, v1 = _step_linear(masks[:i], masks[i])
        vars_out[i] = v1
        ok = ok and step_ok
    return vars_out, ok


def _sequence_linear(masks) -> bool:
    for i in range(1, len(masks)):
        ok, _ = _step_linear(masks[:i], masks[i])
        if not ok:
            return False
    return True


@dataclass(frozen=True)
class QuotientOrder:
    """Ordering of an ideal's generators with per-step colon variables.

    Instances are plain data; ``verify_order`` is the gate that decides
    whether the order actually has linear quotients.
    """

    ideal: MonomialIdeal
    order: tuple
    colon_vars: tuple

    def ordered_gens(self):
        return [self.ideal.gens[i] for i in self.order]

    @property
    def degree(self):
        return self.ideal.min_degree if self.ideal.is_equigenerated else None

    def step_sizes(self) -> list:
        """|colon_vars| per position: the r_j feeding the Betti oracle."""
        return [len(s) for s in self.colon_vars]

    def to_json(self, labels=None) -> dict:
        if labels is None:
            labels = [f"x{i + 1}" for i in range(self.ideal.ambient)]
        return {
            "ambient": self.ideal.ambient,
            "vars": list(labels),
            "ordered_gens": [g.names(labels) for g in self.ordered_gens()],
            "colon_vars": [[labels[v] for v in sorted(s)] for s in self.colon_vars],
        }

    @classmethod
    def from_json(cls, data) -> "QuotientOrder":
        try:
            ambient = int(data["ambient"])
            names = list(data["vars"])
            ordered = data["ordered_gens"]
            colon = data["colon_vars"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad certificate JSON: {exc}") from None
        if len(names) != ambient:
            raise InputError("vars length does not match ambient")
        index = {name: i for i, name in enumerate(names)}
        try:
            gens = [Monomial(index[v] for v in g) for g in ordered]
            colon_sets = tuple(frozenset(index[v] for v in s) for s in colon)
        except KeyError as exc:
            raise InputError(f"unknown variable {exc} in certificate") from None
        ideal = MonomialIdeal.from_generators(ambient, gens)
        if len(ideal.gens) != len(gens):
            raise InputError("certificate generators are not minimal or not distinct")
        pos = {g.mask: i for i, g in enumerate(ideal.gens)}
        order = tuple(pos[g.mask] for g in gens)
        if len(colon_sets) != len(gens):
            raise InputError("colon variable list length mismatch")
        return cls(ideal, order, colon_sets)


def make_order(ideal: MonomialIdeal, order) -> QuotientOrder:
    """Package an order with its computed colon variables (not validated)."""
    order = tuple(order)
    if sorted(order) != list(range(len(ideal.gens))):
        raise InputError("order is not a permutation of the generators")
    masks = [ideal.gens[i].mask for i in order]
    vars_masks, _ = _sequence_colon_vars(masks)
    colon = tuple(frozenset(_bits(v)) for v in vars_masks)
    return QuotientOrder(ideal, order, colon)


def verify_order(q: QuotientOrder) -> bool:
    """Recompute every prefix colon and compare against the certificate."""
    r = len(q.ideal.gens)
    if sorted(q.order) != list(range(r)):
        raise InputError("order is not a permutation of the generators")
    if len(q.colon_vars) != r:
        raise InputError("colon variable list length mismatch")
    for s in q.colon_vars:
        for v in s:
            if not 0 <= v < q.ideal.ambient:
                raise InputError(f"colon variable {v} outside ambient")
    if r == 0:
        return True
    masks = [q.ideal.gens[i].mask for i in q.order]
    degs = [_popcount(m) for m in masks]
    if any(degs[i] > degs[i + 1] for i in range(r - 1)):
        return False
    if q.colon_vars[0] != frozenset():
        return False
    for i in range(1, r):
        ok, v1 = _step_linear(masks[:i], masks[i])
        if not ok or frozenset(_bits(v1)) != q.colon_vars[i]:
            return False
    return True


# ---------------------------------------------------------------------------
# exact search


def _search_masks(masks, spend=None):
    """Lexicographically first linear-quotients order of ``masks``, or None.

    Depth-first search over prefixes; failed prefix *sets* are memoized,
    which is exact because a step's colon depends on the prefix only as a
    set.  ``spend`` is called once per node expansion for budget accounting.
    """
    r = len(masks)
    if r <= 1:
        return list(masks)
    failed = set()
    chosen = []
    prefix = []
    used = 0
    nexts = [0]
    backtracked = False
    while True:
        if len(chosen) == r:
            search_stats["backtracked" if backtracked else "greedy"] += 1
            return list(prefix)
        advanced = False
        i = nexts[-1]
        while i < r:
            if not used >> i & 1:
                child = used | 1 << i
                if child not in failed:
                    ok, _ = _step_linear(prefix, masks[i])
                    if ok:
                        if spend is not None:
                            spend()
                        nexts[-1] = i + 1
                        chosen.append(i)
                        prefix.append(masks[i])
                        used = child
                        nexts.append(0)
                        advanced = True
                        break
            i += 1
        if not advanced:
            failed.add(used)
            if not chosen:
                search_stats["exhausted"] += 1
                return None
            backtracked = True
            used ^= 1 << chosen.pop()
            prefix.pop()
            nexts.pop()


def _order_from_masks(ambient: int, ordered_masks) -> QuotientOrder:
    gens = sorted((Monomial.from_mask(m) for m in ordered_masks), key=lambda g: g.sort_key)
    ideal = MonomialIdeal(ambient, gens)
    pos = {g.mask: i for i, g in enumerate(ideal.gens)}
    order = tuple(pos[m] for m in ordered_masks)
    vars_masks, _ = _sequence_colon_vars(list(ordered_masks))
    return QuotientOrder(ideal, order, tuple(frozenset(_bits(v)) for v in vars_masks))


def find_order(I: MonomialIdeal, *, budget=None) -> QuotientOrder | None:
    """Some verified linear-quotients order of I, or None if none exists.

    Deterministic: the canonical generator order is tried first, then the
    search explores candidates lexicographically.  I must be equigenerated.
    """
    if len(I.gens) > 1 and not I.is_equigenerated:
        raise InputError("find_order expects an equigenerated ideal")
    masks = I.gen_masks()
    if len(masks) > 1 and _sequence_linear(masks):
        search_stats["identity"] += 1
        return make_order(I, range(len(masks)))
    spend = _budget_counter(budget) if budget is not None else None
    found = _search_masks(masks, spend)
    if found is None:
        return None
    return _order_from_masks(I.ambient, found)


def _budget_counter(budget: int):
    state = {"left": budget}

    def spend():
        state["left"] -= 1
        if state["left"] < 0:
            raise SearchBudgetExceeded(f"order search exceeded {budget} nodes")

    return spend


# ---------------------------------------------------------------------------
# dual components of a graph


class _OrderSearch:
    """Orders dual components of one graph's induced subgraphs.

    Works on bitmasks in the graph's own ambient so that the whisker
    recursion never reindexes.  ``order`` answers exactly: a list is a
    verified order, None means no order exists (proved by exhaustive
    search); a budget overrun raises instead of guessing.
    """

    def __init__(self, adj, budget=None):
        self.adj = adj
        self._covers = {}
        self._orders = {}
        self.spend = _budget_counter(budget) if budget is not None else None

    def covers(self, active: int) -> dict:
        got = self._covers.get(active)
        if got is None:
            got = _covers_by_size(self.adj, active)
            self._covers[active] = got
        return got

    def gens(self, active: int, d: int) -> list:
        if d < 0:
            return []
        return self.covers(active).get(d, [])

    def order(self, active: int, d: int):
        key = (active, d)
        if key in self._orders:
            return self._orders[key]
        result = self._order_uncached(active, d)
        self._orders[key] = result
        return result

    def _order_uncached(self, active: int, d: int):
        gens = self.gens(active, d)
        if len(gens) <= 1:
            return list(gens)
        if _sequence_linear(gens):
            search_stats["identity"] += 1
            return list(gens)
        cand = self._structural_candidate(active, d)
        if cand is not None and _sequence_linear(cand):
            search_stats["structural"] += 1
            return cand
        return _search_masks(gens, self.spend)

    def _structural_candidate(self, active: int, d: int):
        """Order built from the vertex-cover decomposition at an isolated
        vertex or a pendant vertex; None when the recursion cannot certify."""
        iso = [v for v in _bits(active) if self.adj[v] & active == 0]
        if iso:
            wbit = 1 << iso[0]
            rest = active ^ wbit
            e_block = self.order(rest, d)
            f_block = self.order(rest, d - 1)
            if e_block is None or f_block is None:
                return None
            return list(e_block) + [m | wbit for m in f_block]
        tip = None
        for v in _bits(active):
            nb = self.adj[v] & active
            if nb and nb & (nb - 1) == 0:
                tip = v
        if tip is None:
            return None
        return self._tip_candidate(active, tip, (self.adj[tip] & active).bit_length() - 1, d)

    def _tip_candidate(self, active: int, x: int, y: int, d: int):
        xbit, ybit = 1 << x, 1 << y
        rest = active ^ xbit ^ ybit
        b_block = self.order(rest, d - 1)
        if b_block is None:
            return None
        a_masks = self.gens(active ^ xbit, d - 1)
        dmask = self.adj[y] & active & ~xbit
        u = _popcount(dmask)
        c_block = self.order(rest & ~dmask, d - 1 - u)
        if c_block is None:
            return None
        nondiv = [m for m in a_masks if not m & ybit]
        if {dmask | c for c in c_block} != set(nondiv):
            return None
        div = [m for m in a_masks if m & ybit]
        return ([ybit | m for m in b_block]
                + [xbit | dmask | c for c in c_block]
                + [xbit | m for m in div])


@dataclass
class DLQReport:
    """Per-degree linear-quotients outcomes for a graph's dual components."""

    graph: Graph
    per_degree: dict = field(default_factory=dict)
    unknown: tuple = ()
    skipped: tuple = ()

    @property
    def verdict(self):
        if any(q is None for q in self.per_degree.values()):
            return False
        if self.unknown:
            return None
        return True

    @property
    def failing_degree(self):
        for d in sorted(self.per_degree):
            if self.per_degree[d] is None:
                return d
        return None

    def certificates(self) -> dict:
        return {d: q for d, q in self.per_degree.items() if q is not None}


def has_dual_linear_quotients(G: Graph, *, budget=None, stop_at_failure=False) -> DLQReport:
    """Check linear quotients of every square-free degree component of the dual.

    Degrees run from the minimum cover size to the vertex count.  With a
    budget, degrees whose exact search was cut off are reported as unknown
    rather than decided.
    """
    ctx = _OrderSearch(G.adj, budget)
    full = (1 << G.n) - 1
    sizes = ctx.covers(full)
    dmin = min(sizes) if sizes else 0
    per_degree = {}
    unknown = []
    skipped = []
    failed = False
    for d in range(dmin, G.n + 1):
        if failed and stop_at_failure:
            skipped.append(d)
            continue
        try:
            ordered = ctx.order(full, d)
        except SearchBudgetExceeded:
            unknown.append(d)
            continue
        if ordered is None:
            per_degree[d] = None
            failed = True
        else:
            per_degree[d] = _order_from_masks(G.n, ordered)
    return DLQReport(G, per_degree, tuple(unknown), tuple(skipped))


def dual_component_order(G: Graph, d: int, *, budget=None):
    """Verified order for (dual of G)_[d], or None if that component has none."""
    ctx = _OrderSearch(G.adj, budget)
    ordered = ctx.order((1 << G.n) - 1, d)
    if ordered is None:
        return None
    return _order_from_masks(G.n, ordered)


# ---------------------------------------------------------------------------
# the constructive whisker ordering


@dataclass(frozen=True)
class WhiskerSplit:
    """Vertex-cover decomposition of a degree-d dual component at a whisker.

    A covers avoid the tip; B covers avoid the whole whisker; the A covers
    missing the base vertex are exactly D times the C covers, where D is the
    base's other neighbors.
    """

    whisker: tuple
    degree: int
    A_list: tuple
    B_list: tuple
    D: frozenset
    C_list: tuple

    @property
    def u(self) -> int:
        return len(self.D)


def _validate_whisker(K: Graph, whisker):
    x, y = whisker
    if not 0 <= x < K.n:
        raise InputError(f"whisker tip {x} out of range")
    deg = K.degree(x)
    if deg > 1:
        raise InputError(f"vertex {x} has degree {deg}; not a whisker tip")
    if deg == 1:
        nb = (K.adj[x]).bit_length() - 1
        if y is None or nb != y:
            raise InputError(f"whisker tip {x} is adjacent to {nb}, not {y}")
    elif y is not None and not 0 <= y < K.n:
        raise InputError(f"whisker base {y} out of range")
    return x, y, deg


def whisker_split(K: Graph, whisker, d: int) -> WhiskerSplit:
    """The A/B/C/D data at a degree-one whisker tip (tests poke at this)."""
    x, y, deg = _validate_whisker(K, whisker)
    if deg != 1:
        raise InputError("whisker_split needs a degree-one tip")
    full = (1 << K.n) - 1
    xbit, ybit = 1 << x, 1 << y
    a_masks = _covers_by_size(K.adj, full ^ xbit).get(d - 1, [])
    b_masks = _covers_by_size(K.adj, full ^ xbit ^ ybit).get(d - 1, [])
    dmask = K.adj[y] & ~xbit
    u = _popcount(dmask)
    c_masks = []
    if d - 1 - u >= 0:
        c_masks = _covers_by_size(K.adj, (full ^ xbit ^ ybit) & ~dmask).get(d - 1 - u, [])
    to_sets = lambda ms: tuple(frozenset(_bits(m)) for m in ms)
    return WhiskerSplit((x, y), d, to_sets(a_masks), to_sets(b_masks),
                        frozenset(_bits(dmask)), to_sets(c_masks))


def whisker_order(K: Graph, whisker, d: int, recurse=None) -> QuotientOrder:
    """Order the degree-d dual component along the whisker decomposition.

    ``recurse(subgraph, degree)`` supplies orders for the smaller components
    (B and C blocks); None falls back to the canonical order for that block,
    and the default oracle is this module's own pipeline.  The result is a
    candidate: callers decide with ``verify_order`` whether it certifies,
    and with a failing hypothesis it genuinely may not.
    """
    x, y, deg = _validate_whisker(K, whisker)
    full = (1 << K.n) - 1
    gens_d = _covers_by_size(K.adj, full).get(d, [])
    if not gens_d:
        raise InputError(f"the degree-{d} dual component is zero")

    def sub_order(keep_mask: int, dd: int):
        keep = list(_bits(keep_mask))
        canonical = _covers_by_size(K.adj, keep_mask).get(dd, [])
        if dd < 0 or not canonical:
            return []
        sub = induced_subgraph(K, keep)
        if recurse is None:
            ctx = _OrderSearch(sub.adj)
            ordered = ctx.order((1 << sub.n) - 1, dd)
            q = _order_from_masks(sub.n, ordered) if ordered is not None else None
        else:
            q = recurse(sub, dd)
        if q is None:
            return canonical
        embedded = []
        for g in q.ordered_gens():
            m = 0
            for b in _bits(g.mask):
                m |= 1 << keep[b]
            embedded.append(m)
        if set(embedded) != set(canonical):
            raise InputError("recursion oracle returned a different component")
        return embedded

    xbit = 1 << x
    if deg == 0:
        e_block = sub_order(full ^ xbit, d)
        f_block = sub_order(full ^ xbit, d - 1)
        seq = list(e_block) + [m | xbit for m in f_block]
    else:
        ybit = 1 << y
        rest = full ^ xbit ^ ybit
        b_block = sub_order(rest, d - 1)
        a_masks = _covers_by_size(K.adj, full ^ xbit).get(d - 1, [])
        dmask = K.adj[y] & ~xbit
        u = _popcount(dmask)
        c_block = sub_order(rest & ~dmask, d - 1 - u)
        nondiv = {m for m in a_masks if not m & ybit}
        built = [dmask | c for c in c_block]
        if set(built) != nondiv:
            raise AssertionError("cover decomposition mismatch at the whisker")
        div = [m for m in a_masks if m & ybit]
        seq = ([ybit | m for m in b_block]
               + [xbit | m for m in built]
               + [xbit | m for m in div])
    if set(seq) != set(gens_d) or len(seq) != len(gens_d):
        raise AssertionError("whisker blocks do not assemble the component")
    return _order_from_masks(K.n, seq)
