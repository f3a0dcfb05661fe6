"""Conjugation-invariant word norms on small permutation groups.

Elements are permutations of at most 12 points, stored as tuples of images.
Groups are fully enumerated (cap 10^6 elements), which keeps every norm
computable by breadth-first search and every axiom checkable exhaustively.
This module is the finite brute-force oracle for the norm calculus used by
the rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from rotnorm import _kernels
from rotnorm._rat import INF
from rotnorm.errors import (
    ClosureTooLarge,
    EmptySubset,
    IdentityGenerator,
    NotAMember,
    NotConjInvariant,
    NotSymmetric,
    TrivialGroup,
    ValidationError,
)

Perm = tuple[int, ...]

MAX_DEGREE = 12
CLOSURE_CAP = 10**6


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(a: Perm, b: Perm) -> Perm:
    """Product a*b: apply b first, then a."""
    return tuple(a[b[i]] for i in range(len(a)))


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, img in enumerate(a):
        inv[img] = i
    return tuple(inv)


def conjugate(h: Perm, g: Perm) -> Perm:
    """h g h^-1."""
    return compose(compose(h, g), inverse(h))


def commutator(a: Perm, b: Perm) -> Perm:
    return compose(compose(a, b), compose(inverse(a), inverse(b)))


def validate_perm(images) -> Perm:
    p = tuple(int(i) for i in images)
    if len(p) > MAX_DEGREE:
        raise ValidationError(f"degree {len(p)} exceeds cap {MAX_DEGREE}")
    if sorted(p) != list(range(len(p))):
        raise ValidationError(f"not a permutation of 0..{len(p) - 1}: {p}")
    return p


def cycle_str(p: Perm) -> str:
    """Cycle notation, fixed points omitted; identity is '()'."""
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) if cycles else "()"


def _to_bytes(p: Perm) -> bytes:
    return bytes(p)


def _from_bytes(b: bytes) -> Perm:
    return tuple(b)


@dataclass(frozen=True)
class FiniteGroup:
    """A fully enumerated permutation group with canonically ordered elements."""

    degree: int
    elements: tuple[Perm, ...]
    generators: tuple[Perm, ...]
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity_perm(self.degree)

    def __contains__(self, g) -> bool:
        return g in self._index

    def require_member(self, g: Perm) -> Perm:
        if g not in self._index:
            raise NotAMember(f"{g} is not an element of the group")
        return g


def generate_group(generators) -> FiniteGroup:
    """Close a generator set under products (BFS, cap 10^6 elements)."""
    gens = tuple(validate_perm(g) for g in generators)
    if not gens:
        raise ValidationError("at least one generator required")
    degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValidationError("generators have mixed degrees")
    raw = _kernels.closure_bytes([_to_bytes(g) for g in gens], CLOSURE_CAP)
    if raw is None:
        raise ClosureTooLarge(f"closure exceeds {CLOSURE_CAP} elements")
    elements = tuple(sorted(_from_bytes(b) for b in raw))
    return FiniteGroup(degree=degree, elements=elements, generators=gens)


def conjugacy_class(G: FiniteGroup, g: Perm) -> tuple[Perm, ...]:
    G.require_member(g)
    return tuple(sorted({conjugate(h, g) for h in G.elements}))


def normal_closure(G: FiniteGroup, g: Perm) -> FiniteGroup:
    """Smallest normal subgroup of G containing g."""
    G.require_member(g)
    if g == G.identity:
        return FiniteGroup(G.degree, (G.identity,), (G.identity,))
    gens = set(conjugacy_class(G, g)) | set(conjugacy_class(G, inverse(g)))
    return generate_group(sorted(gens))


@dataclass(frozen=True)
class SymmetricSet:
    """A generating set closed under inversion and ambient conjugation."""

    members: tuple[Perm, ...]

    @staticmethod
    def checked(G: FiniteGroup, members) -> "SymmetricSet":
        mems = tuple(sorted({tuple(m) for m in members}))
        for s in mems:
            G.require_member(s)
        mset = set(mems)
        for s in mems:
            if inverse(s) not in mset:
                raise NotSymmetric(f"inverse of {s} missing from the set")
        for h in G.elements:
            for s in mems:
                if conjugate(h, s) not in mset:
                    raise NotConjInvariant(f"{h} conjugates {s} out of the set")
        return SymmetricSet(mems)


@dataclass(frozen=True)
class NormTable:
    """Map element -> word-norm value (non-negative int, or inf)."""

    group: FiniteGroup
    values: dict

    def __getitem__(self, g: Perm):
        self.group.require_member(g)
        return self.values[g]

    def check_axioms(self) -> None:
        """Exhaustive check of the four norm axioms; raises on violation."""
        G = self.group
        v = self.values
        assert v[G.identity] == 0
        for g in G.elements:
            if g != G.identity:
                assert v[g] > 0, f"norm vanishes off identity at {g}"
            assert v[g] == v[inverse(g)], f"asymmetric at {g}"
        for g in G.elements:
            for h in G.elements:
                assert v[compose(g, h)] <= v[g] + v[h], f"triangle fails at {g},{h}"
                assert v[conjugate(h, g)] == v[g], f"not conjugation-invariant at {g}"

    def to_json(self) -> dict:
        out = {}
        for g in self.group.elements:
            val = self.values[g]
            out[cycle_str(g)] = "inf" if val == INF else int(val)
        return out


def word_norm(G: FiniteGroup, S: SymmetricSet | tuple | list | set) -> NormTable:
    """BFS word length over S; inf outside the subgroup generated by S."""
    if not isinstance(S, SymmetricSet):
        S = SymmetricSet.checked(G, S)
    elements_b = [_to_bytes(g) for g in G.elements]
    s_b = [_to_bytes(s) for s in S.members if s != G.identity]
    dists = _kernels.word_lengths_bytes(elements_b, s_b)
    values = {
        g: (INF if d < 0 else d) for g, d in zip(G.elements, dists)
    }
    return NormTable(group=G, values=values)


def commutator_set(G: FiniteGroup) -> tuple[Perm, ...]:
    out = set()
    for a in G.elements:
        for b in G.elements:
            out.add(commutator(a, b))
    return tuple(sorted(out))


def commutator_length(G: FiniteGroup) -> NormTable:
    """Word norm over the set of all commutators; inf outside [G, G]."""
    return word_norm(G, SymmetricSet(commutator_set(G)))


def zeta_norm(G: FiniteGroup, g: Perm) -> NormTable:
    """Word norm over the conjugacy classes of g and g^-1."""
    G.require_member(g)
    if g == G.identity:
        raise IdentityGenerator("zeta norm requires a non-identity element")
    s = set(conjugacy_class(G, g)) | set(conjugacy_class(G, inverse(g)))
    return word_norm(G, SymmetricSet(tuple(sorted(s))))


def quotient_norm(q: NormTable, S, f: Perm):
    """min over a in S of q(f a^-1)."""
    members = tuple(S.members) if isinstance(S, SymmetricSet) else tuple(S)
    if not members:
        raise EmptySubset("quotient norm needs a non-empty subset")
    G = q.group
    G.require_member(f)
    for a in members:
        G.require_member(tuple(a))
    return min(q.values[compose(f, inverse(tuple(a)))] for a in members)


def weakly_simple_set(G: FiniteGroup):
    """S_G = union of all proper normal subgroups, plus a classification.

    Returns (elements of S_G sorted, classification) with classification one
    of 'simple', 'weakly simple', 'not weakly simple'.
    """
    if G.order <= 1:
        raise TrivialGroup("classification undefined for the trivial group")
    # One normal-closure computation per conjugacy class.
    remaining = set(G.elements)
    s_g: set[Perm] = set()
    while remaining:
        g = min(remaining)
        cls = set(conjugacy_class(G, g))
        remaining -= cls
        if g == G.identity:
            s_g.add(g)
            continue
        if normal_closure(G, g).order < G.order:
            s_g |= cls
    if s_g == {G.identity}:
        classification = "simple"
    elif len(s_g) < G.order:
        classification = "weakly simple"
    else:
        classification = "not weakly simple"
    return tuple(sorted(s_g)), classification


def quotient_group(G: FiniteGroup, N: FiniteGroup):
    """Quotient G/N realized by the left-multiplication action on cosets.

    N must be normal in G.  Returns (Q, proj) where Q is a permutation group
    on the coset indices and proj maps each element of G to its image in Q.
    """
    for n in N.elements:
        G.require_member(n)
        for g in G.elements:
            if conjugate(g, n) not in N:
                raise ValidationError("subgroup is not normal")
    # Enumerate cosets deterministically, keyed by their minimal element.
    coset_of: dict[Perm, int] = {}
    reps: list[Perm] = []
    for g in G.elements:  # already sorted: reps are coset minima
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for n in N.elements:
            coset_of[compose(g, n)] = idx
    d = len(reps)
    proj = {
        g: tuple(coset_of[compose(g, reps[i])] for i in range(d))
        for g in G.elements
    }
    Q = generate_group(sorted(set(proj.values())))
    return Q, proj
