"""Enumerated permutation groups.

Elements are rows of an ``(order, degree)`` integer array of point images.
Products follow the left-to-right convention: ``xy`` applies ``x`` first, so
as image arrays ``xy == y[x]``.  Commutators are ``[x, y] = x^-1 y^-1 x y``.

Element lookup goes through a base: a short list of points whose images
already determine an element of the group.  Base images are packed into one
int64 key and located with ``searchsorted``.
"""
from __future__ import annotations

import hashlib
import math
import re
import threading
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
from sympy import factorint

DEFAULT_SEED = 1729
RESTART_BUDGET = 200
CAYLEY_LIMIT = 4096
CACHE_VERSION = 1


class GroupError(ValueError):
    pass


class NotASubgroup(GroupError):
    pass


# -- raw permutation helpers --------------------------------------------------

def perm_mul(x, y):
    """Product ``xy`` (``x`` first).  Either side may be a stack of permutations."""
    x = np.asarray(x)
    y = np.asarray(y)
    if y.ndim == 1:
        return y[x]
    if x.ndim == 1:
        return y[:, x]
    return np.take_along_axis(y, x, axis=1)


def perm_inv(x):
    x = np.asarray(x)
    return np.argsort(x, axis=-1).astype(x.dtype)


def perm_comm(x, y):
    return perm_mul(perm_mul(perm_inv(x), perm_inv(y)), perm_mul(x, y))


def perm_order(x) -> int:
    x = np.asarray(x)
    seen = np.zeros(len(x), dtype=bool)
    order = 1
    for start in range(len(x)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = x[i]
            length += 1
        order = math.lcm(order, length)
    return order


def parse_perm(text: str, degree: int, offset: int = 0) -> np.ndarray:
    """Parse cycle notation ``(0,1,2)(3,4)`` or an image list ``[1,2,0]``/``1 2 0``."""
    text = text.strip()
    if text.startswith("(") or text == "()":
        perm = np.arange(degree)
        for cyc in re.findall(r"\(([^()]*)\)", text):
            pts = [int(t) - offset for t in re.split(r"[,\s]+", cyc.strip()) if t]
            for a, b in zip(pts, pts[1:] + pts[:1]):
                if not 0 <= a < degree:
                    raise GroupError(f"point {a + offset} outside degree {degree}")
                perm[a] = b
        if len(set(perm.tolist())) != degree:
            raise GroupError(f"not a permutation: {text}")
        return perm
    pts = [int(t) - offset for t in re.split(r"[,\s\[\]]+", text) if t]
    if sorted(pts) != list(range(degree)):
        raise GroupError(f"not a permutation of degree {degree}: {text}")
    return np.array(pts)


def cycle_string(x, offset: int = 0) -> str:
    x = np.asarray(x)
    seen = set()
    parts = []
    for start in range(len(x)):
        if start in seen or x[start] == start:
            continue
        cyc = []
        i = start
        while i not in seen:
            seen.add(i)
            cyc.append(str(int(i) + offset))
            i = int(x[i])
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def _dtype(degree):
    return np.int16 if degree < 2**15 else np.int32


@dataclass(frozen=True)
class ConjClass:
    rep: int
    members: np.ndarray = field(repr=False)
    order: int

    @property
    def size(self) -> int:
        return len(self.members)


# -- groups --------------------------------------------------------------------

class Group:
    """A finite permutation group with every element listed.

    ``elements[i]`` is the image array of element ``i``.  Index order is the
    BFS order of :func:`generate`, so indices are stable across runs.
    """

    def __init__(self, elements, generators=None, name: str = ""):
        elements = np.ascontiguousarray(elements, dtype=_dtype(np.shape(elements)[1]))
        self.elements = elements
        self.order, self.degree = elements.shape
        self.name = name
        self.generators = [np.asarray(g, dtype=elements.dtype) for g in (generators or [])]
        self._lock = threading.RLock()
        self._build_index()
        ident = np.arange(self.degree)
        self.id = int(self.index(ident))

    def __repr__(self):
        return f"<Group {self.name or '?'} order={self.order} degree={self.degree}>"

    def __len__(self):
        return self.order

    # lookup
    def _build_index(self):
        E = self.elements.astype(np.int64)
        d = self.degree
        key = np.zeros(self.order, dtype=np.int64)
        base = []
        distinct = 1
        cap = 2**62
        for b in range(d):
            if distinct == self.order:
                break
            if d ** (len(base) + 1) > cap:
                base = None
                break
            trial = key * d + E[:, b]
            n = len(np.unique(trial))
            if n > distinct:
                base.append(b)
                key = trial
                distinct = n
        if base is not None and distinct == self.order:
            self.base = np.array(base, dtype=np.int64)
            self._powers = d ** np.arange(len(base) - 1, -1, -1, dtype=np.int64)
            self._sort = np.argsort(key, kind="stable")
            self._sorted_keys = key[self._sort]
            self._dict = None
        else:  # only for groups with huge bases; dictionary on full rows
            self.base = None
            self._dict = {row.tobytes(): i for i, row in enumerate(self.elements)}

    def _keys(self, perms):
        return np.asarray(perms, dtype=np.int64)[..., self.base] @ self._powers

    def indices(self, perms, check: bool = True) -> np.ndarray:
        """Element indices of a stack of permutations; -1 where not in the group."""
        perms = np.atleast_2d(np.asarray(perms))
        if self._dict is not None:
            conv = perms.astype(self.elements.dtype)
            return np.array([self._dict.get(r.tobytes(), -1) for r in conv], dtype=np.int64)
        keys = self._keys(perms)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        idx = self._sort[pos].astype(np.int64)
        bad = self._sorted_keys[pos] != keys
        if check:
            bad |= np.any(self.elements[idx] != perms, axis=1)
        idx[bad] = -1
        return idx

    def index(self, perm) -> int:
        i = int(self.indices(np.asarray(perm)[None, :])[0])
        if i < 0:
            raise GroupError("permutation is not an element of the group")
        return i

    def contains(self, perm) -> bool:
        return int(self.indices(np.asarray(perm)[None, :])[0]) >= 0

    # arithmetic on indices
    def mul(self, i, j):
        """Index of ``e_i e_j``; ``i`` and ``j`` may be index arrays."""
        E = self.elements
        if np.ndim(i) == 0 and np.ndim(j) == 0:
            return int(self.indices(perm_mul(E[i], E[j])[None, :], check=False)[0])
        return self.indices(perm_mul(E[i], E[j]), check=False)

    def inv(self, i):
        E = self.elements
        if np.ndim(i) == 0:
            return int(self.indices(perm_inv(E[i])[None, :], check=False)[0])
        return self.indices(perm_inv(E[i]), check=False)

    def comm(self, i, j):
        E = self.elements
        return int(self.indices(perm_comm(E[i], E[j])[None, :], check=False)[0])

    def conjugate_indices(self, idx, g) -> np.ndarray:
        """Indices of ``e^g = g^-1 e g`` for each index ``e`` in ``idx``."""
        g = np.asarray(g)
        ginv = perm_inv(g)
        sub = self.elements[np.asarray(idx)]
        return self.indices(g[sub[:, ginv]], check=False)

    @cached_property
    def cayley(self) -> np.ndarray:
        """Full multiplication table; only for small groups."""
        if self.order > CAYLEY_LIMIT:
            raise GroupError(f"no Cayley table for order {self.order} > {CAYLEY_LIMIT}")
        E = self.elements
        table = np.empty((self.order, self.order), dtype=np.int32)
        for i in range(self.order):
            table[i] = self.indices(perm_mul(E[i], E), check=False)
        return table

    # element data
    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.empty(self.order, dtype=np.int64)
        for cl in self.conjugacy_classes():
            orders[cl.members] = cl.order
        return orders

    def element_order(self, i: int) -> int:
        return perm_order(self.elements[i])

    def _generating_set(self):
        if self.generators:
            return self.generators
        self.generators = [self.elements[i] for i in small_generating_set(self)]
        return self.generators

    @cached_property
    def _generator_conj(self):
        """For each generator s, the index permutation e -> e^s."""
        E = self.elements
        out = []
        for s in self._generating_set():
            sinv = perm_inv(s)
            out.append(self.indices(s[E[:, sinv]], check=False))
        return out

    def conjugacy_classes(self) -> list[ConjClass]:
        with self._lock:
            if "_classes" not in self.__dict__:
                self._compute_classes()
            return self._classes

    def _compute_classes(self):
        n = self.order
        gconj = self._generator_conj
        gens = self._generating_set()
        class_of = np.full(n, -1, dtype=np.int64)
        conjugator = np.empty_like(self.elements)
        classes = []
        for start in range(n):
            if class_of[start] >= 0:
                continue
            cid = len(classes)
            class_of[start] = cid
            conjugator[start] = np.arange(self.degree)
            orbit = [start]
            k = 0
            while k < len(orbit):
                u = orbit[k]
                k += 1
                for s, perm in zip(gens, gconj):
                    v = int(perm[u])
                    if class_of[v] < 0:
                        class_of[v] = cid
                        conjugator[v] = perm_mul(conjugator[u], s)
                        orbit.append(v)
            members = np.array(sorted(orbit), dtype=np.int64)
            classes.append(ConjClass(start, members, perm_order(self.elements[start])))
        self._class_of = class_of
        self._conjugator = conjugator
        self._classes = classes

    @property
    def class_of(self) -> np.ndarray:
        self.conjugacy_classes()
        return self._class_of

    def conjugator(self, i: int) -> np.ndarray:
        """A permutation g with ``rep^g == e_i`` where rep is the class representative."""
        self.conjugacy_classes()
        return self._conjugator[i]

    @cached_property
    def center(self) -> np.ndarray:
        return np.array(
            [cl.rep for cl in self.conjugacy_classes() if cl.size == 1], dtype=np.int64
        )

    def centralizer_indices(self, i: int) -> np.ndarray:
        E = self.elements
        x = E[i]
        return np.flatnonzero(np.all(perm_mul(x, E) == perm_mul(E, x), axis=1))

    def centralizer(self, i: int) -> "Group":
        idx = self.centralizer_indices(i)
        return Group(self.elements[idx], name=f"C({i})")

    def subgroup(self, idx, name: str = "") -> "Group":
        """Group on the given element indices (must be closed)."""
        idx = np.unique(np.asarray(idx, dtype=np.int64))
        return Group(self.elements[idx], name=name)

    def closure(self, idx, limit: int | None = None, name: str = "") -> "Group":
        gens = [self.elements[i] for i in np.atleast_1d(idx)]
        return generate(gens, limit=limit or self.order, name=name, degree=self.degree)

    def member_indices(self, H: "Group") -> np.ndarray:
        """Indices (in self) of the elements of a subgroup H; raise if H is not contained."""
        if H.degree != self.degree:
            raise NotASubgroup("degree mismatch")
        idx = self.indices(H.elements)
        if np.any(idx < 0) or self.order % H.order:
            raise NotASubgroup("H is not a subgroup of G")
        return idx

    def normalizer(self, H: "Group") -> "Group":
        self.member_indices(H)
        E = self.elements
        mask = np.ones(self.order, dtype=bool)
        for h in H._generating_set():
            conj = perm_mul(perm_mul(perm_inv(E), h), E)  # g^-1 h g, all g at once
            mask &= H.indices(conj) >= 0
        return Group(E[mask], name=f"N({H.name})")

    def is_abelian(self) -> bool:
        gens = self._generating_set()
        return all(
            np.array_equal(perm_mul(a, b), perm_mul(b, a)) for a in gens for b in gens
        )

    def primes(self) -> list[int]:
        return sorted(factorint(self.order))

    def involutions(self) -> np.ndarray:
        return np.flatnonzero(self.element_orders == 2)

    def cache_key(self) -> str:
        return _content_hash(self.degree, self._generating_set())


def small_generating_set(G: Group) -> list[int]:
    """Greedy generating set: add the first element outside the current closure."""
    gens: list[int] = []
    inside = np.zeros(G.order, dtype=bool)
    inside[G.id] = True
    count = 1
    order_desc = np.argsort(-np.array([perm_order(e) for e in G.elements]), kind="stable")
    for i in order_desc:
        if count == G.order:
            break
        if inside[i]:
            continue
        gens.append(int(i))
        H = generate([G.elements[j] for j in gens], limit=G.order, degree=G.degree)
        sub = G.indices(H.elements, check=False)
        inside[:] = False
        inside[sub] = True
        count = H.order
    return gens


def generate(generators, limit: int = 2 * 10**7, name: str = "", degree: int | None = None) -> Group:
    """Closure of the generators, enumerated breadth-first by generator order."""
    gens = [np.asarray(g) for g in generators]
    if degree is None:
        if not gens:
            raise GroupError("need a degree or at least one generator")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise GroupError("generators have different degrees")
    dt = _dtype(degree)
    gens = [g.astype(dt) for g in gens]
    ident = np.arange(degree, dtype=dt)
    seen = {ident.tobytes()}
    chunks = [ident[None, :]]
    frontier = ident[None, :]
    total = 1
    while len(frontier) and gens:
        layer = []
        prods = np.stack([perm_mul(frontier, g) for g in gens], axis=1).reshape(-1, degree)
        for row in prods:
            b = row.tobytes()
            if b not in seen:
                seen.add(b)
                layer.append(row)
        total += len(layer)
        if total > limit:
            raise GroupError(f"closure exceeds limit {limit}")
        frontier = np.array(layer, dtype=dt).reshape(-1, degree)
        if len(frontier):
            chunks.append(frontier)
    return Group(np.concatenate(chunks), generators=gens, name=name)


# -- named groups ----------------------------------------------------------------

def _cycle(points, degree):
    p = np.arange(degree)
    for a, b in zip(points, points[1:] + points[:1]):
        p[a] = b
    return p


def symmetric_group(n: int) -> Group:
    gens = [_cycle(list(range(n)), n), _cycle([0, 1], n)] if n > 1 else []
    return generate(gens, name=f"Sym({n})", degree=n)


def alternating_group(n: int) -> Group:
    if n < 3:
        return generate([], name=f"Alt({n})", degree=n)
    if n % 2:
        gens = [_cycle(list(range(n)), n), _cycle([0, 1, 2], n)]
    else:
        gens = [_cycle(list(range(1, n)), n), _cycle([0, 1, 2], n)]
    return generate(gens, name=f"Alt({n})", degree=n)


# -- generator files and disk cache --------------------------------------------------

def read_generators(path) -> tuple[int, list[np.ndarray]]:
    """Parse a generator file: ``degree d``, optional ``offset k``, one permutation per line."""
    degree = None
    offset = 0
    gens = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()
        if head[0] == "degree":
            degree = int(head[1])
            continue
        if head[0] == "offset":
            offset = int(head[1])
            continue
        if degree is None:
            raise GroupError(f"{path}: 'degree d' must precede the generators")
        gens.append(parse_perm(line, degree, offset))
    if degree is None:
        raise GroupError(f"{path}: missing 'degree' line")
    return degree, gens


def _content_hash(degree, gens) -> str:
    h = hashlib.sha256(f"v{CACHE_VERSION}:{degree}:".encode())
    for g in gens:
        h.update(np.asarray(g, dtype=np.int32).tobytes())
    return h.hexdigest()[:24]


_MAGIC = b"ENGELGRP"


def save_group(G: Group, path) -> None:
    header = _MAGIC + np.array([CACHE_VERSION, G.order, G.degree, len(G.generators)], dtype=np.int64).tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        for g in G.generators:
            fh.write(np.asarray(g, dtype=np.int32).tobytes())
        fh.write(G.elements.astype(np.int32).tobytes())


def read_cached_group(path, name: str = "") -> Group:
    data = Path(path).read_bytes()
    if not data.startswith(_MAGIC):
        raise GroupError(f"{path}: not a group cache file")
    version, order, degree, ngens = np.frombuffer(data, dtype=np.int64, count=4, offset=len(_MAGIC))
    if version != CACHE_VERSION:
        raise GroupError(f"{path}: cache version {version} != {CACHE_VERSION}")
    body = np.frombuffer(data, dtype=np.int32, offset=len(_MAGIC) + 32)
    gens = body[: ngens * degree].reshape(ngens, degree)
    elements = body[ngens * degree:].reshape(order, degree)
    return Group(elements, generators=list(gens), name=name)


def cached_generate(generators, degree: int, cache_dir=None, name: str = "", limit: int = 2 * 10**7) -> Group:
    if cache_dir is None:
        return generate(generators, limit=limit, name=name, degree=degree)
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_dir / f"{_content_hash(degree, generators)}.grp"
    if path.exists():
        return read_cached_group(path, name=name)
    G = generate(generators, limit=limit, name=name, degree=degree)
    tmp = path.with_suffix(".tmp")
    save_group(G, tmp)
    tmp.replace(path)
    return G


def load_group(path, limit: int = 2 * 10**7, cache_dir=None) -> Group:
    degree, gens = read_generators(path)
    return cached_generate(gens, degree, cache_dir=cache_dir, name=Path(path).stem, limit=limit)


# -- subgroups -------------------------------------------------------------------------

def _pi_part(n: int, primes) -> int:
    out = 1
    for p, e in factorint(n).items():
        if p in primes:
            out *= p**e
    return out


def _is_pi_number(n: int, primes) -> bool:
    return all(p in primes for p in factorint(n))


def hall_subgroup(G: Group, primes, seed: int = DEFAULT_SEED, budget: int = RESTART_BUDGET) -> Group | None:
    """Search for a Hall subgroup for the given prime set.

    Start from a random element of pi-order and repeatedly adjoin a random
    pi-element of the normalizer that keeps the order a pi-number; restart
    when stuck.  ``None`` means the budget ran out, not that none exists.
    """
    primes = set(primes)
    target = _pi_part(G.order, primes)
    if target == 1:
        return Group(G.elements[[G.id]], name="1")
    rng = np.random.default_rng(seed)
    orders = G.element_orders
    pi_elems = np.array(
        [i for i in range(G.order) if orders[i] > 1 and _is_pi_number(int(orders[i]), primes)],
        dtype=np.int64,
    )
    if not len(pi_elems):
        return None
    pi_mask = np.zeros(G.order, dtype=bool)
    pi_mask[pi_elems] = True
    for _ in range(budget):
        gens = [int(rng.choice(pi_elems))]
        H = G.closure(gens)
        while H.order < target:
            inside = np.zeros(G.order, dtype=bool)
            inside[G.indices(H.elements, check=False)] = True
            N = G.normalizer(H)
            cand = G.indices(N.elements, check=False)
            cand = cand[pi_mask[cand] & ~inside[cand]]
            rng.shuffle(cand)
            grown = None
            for y in cand[:32]:
                K = G.closure(gens + [int(y)])
                if target % K.order == 0:
                    grown = K
                    gens.append(int(y))
                    break
            if grown is None:
                break
            H = grown
        if H.order == target:
            H.name = f"Hall{sorted(primes)}"
            return H
    return None


def sylow_subgroup(G: Group, p: int, seed: int = DEFAULT_SEED, budget: int = RESTART_BUDGET) -> Group:
    if G.order % p:
        raise GroupError(f"{p} does not divide |G| = {G.order}")
    H = hall_subgroup(G, {p}, seed=seed, budget=budget)
    if H is None:
        raise GroupError(f"Sylow {p}-subgroup not found within budget")
    H.name = f"Syl{p}"
    return H


# -- coset actions -----------------------------------------------------------------

@dataclass
class CosetAction:
    G: Group
    H: Group
    coset_of: np.ndarray  # right coset label of every element of G
    reps: np.ndarray  # representative element index per coset
    action: np.ndarray  # (|G|, |G:H|) image of each coset under each element

    @property
    def degree(self) -> int:
        return len(self.reps)

    def fixed_points(self) -> np.ndarray:
        """Fixed-coset count of every element of G."""
        return np.sum(self.action == np.arange(self.degree), axis=1)

    def fixed_points_per_class(self) -> list[int]:
        fp = self.fixed_points()
        return [int(fp[cl.rep]) for cl in self.G.conjugacy_classes()]


def coset_action(G: Group, H: Group) -> CosetAction:
    """Action of G by right multiplication on the right cosets Hx."""
    hidx = G.member_indices(H)
    E = G.elements
    # label Hx by the smallest index among its elements
    label = np.full(G.order, G.order, dtype=np.int64)
    for h in hidx:
        label = np.minimum(label, G.indices(perm_mul(E[h], E), check=False))
    reps, coset_of = np.unique(label, return_inverse=True)
    action = np.empty((G.order, len(reps)), dtype=np.int64)
    for c, r in enumerate(reps):
        action[:, c] = coset_of[G.indices(perm_mul(E[r], E), check=False)]
    return CosetAction(G, H, coset_of, reps, action)


def normal_closure(G: Group, idx) -> Group:
    """Smallest normal subgroup of G containing the given elements."""
    gens = [int(i) for i in np.atleast_1d(idx)]
    H = G.closure(gens)
    changed = True
    while changed:
        changed = False
        for s in G._generating_set():
            sinv = perm_inv(s)
            for h in list(H._generating_set()):
                c = s[h[sinv]]  # h^s
                if not H.contains(c):
                    gens.append(G.index(c))
                    H = G.closure(gens)
                    changed = True
    return H


def is_simple(G: Group) -> bool:
    if G.order == 1:
        return False
    return all(
        normal_closure(G, cl.rep).order == G.order
        for cl in G.conjugacy_classes() if cl.rep != G.id
    )
