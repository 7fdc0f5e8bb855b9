"""Rank and ideal identities around the DPV filtration, the inductive ideal
presentations indexed by admissible sets, and the semilocal rank telescope."""

from itertools import permutations

from . import linalg
from .cones import big_cells
from .errors import CertificationFailed, NotAdmissible, PreconditionError
from .ideals import LaurentIdeal, ideal_J, ideal_J_i
from .matroid import (is_semilocal, rational_subspaces, upset_L, upset_L_Omega,
                      zonotope_lattice_points, zonotope_volume_in_span)
from .operators import nabla_symbol


class AdmissibleSet:
    """Inclusion-closed set of nonzero proper rational subspaces."""

    def __init__(self, X, subspaces):
        self.X = X
        subs = {s.indices: s for s in subspaces}
        self.subspaces = tuple(sorted(subs.values(), key=lambda s: s.sort_key()))
        validate_admissible(X, self.subspaces)

    def __contains__(self, s):
        return any(t.indices == s.indices for t in self.subspaces)

    def __len__(self):
        return len(self.subspaces)

    def with_subspace(self, s):
        return AdmissibleSet(self.X, self.subspaces + (s,))

    def to_json(self):
        return [sorted(s.indices) for s in self.subspaces]


def _proper_nonzero(X):
    return [s for s in rational_subspaces(X) if 0 < s.dim < X.d]


def validate_admissible(X, subspaces):
    every = _proper_nonzero(X)
    keys = {s.indices for s in subspaces}
    for s in subspaces:
        if not 0 < s.dim < X.d:
            raise NotAdmissible(f"subspace spanned by {sorted(s.indices)} is zero or everything")
        for t in every:
            if t.indices < s.indices and t.indices not in keys:
                raise NotAdmissible(
                    f"{sorted(t.indices)} lies in {sorted(s.indices)} but is missing",
                    pair=(sorted(t.indices), sorted(s.indices)))


def admissible_sets_up_to(X, i):
    """The admissible set of all nonzero rational subspaces of dimension ``< i``."""
    if not 1 <= i <= X.d:
        raise PreconditionError(f"need 1 <= i <= d, got {i}")
    return AdmissibleSet(X, [s for s in _proper_nonzero(X) if s.dim < i])


def _complement(X, s):
    return frozenset(range(X.n)) - s.indices


def ktheory_presentation(X, Q, order="grevlex"):
    """``(nabla_{X \\ s})`` over ``s`` in ``Q`` together with the zero subspace."""
    if not isinstance(Q, AdmissibleSet):
        Q = AdmissibleSet(X, Q)
    gens = [nabla_symbol(X, range(X.n))]
    gens += [nabla_symbol(X, _complement(X, s)) for s in Q.subspaces]
    return LaurentIdeal(X.d, gens, order)


def _subspaces_below(X, s):
    """Rational ``t`` strictly inside ``s`` (including the zero subspace)."""
    return [t for t in rational_subspaces(X) if t.indices < s.indices or (t.dim == 0 and s.dim > 0)]


def _restricted_nabla(X, s, t):
    """``nabla_{(X ∩ s) \\ t}``."""
    return nabla_symbol(X, s.indices - t.indices)


def induction_step_certify(X, Q, s, order="grevlex"):
    """Product and colon identities for adding ``s`` to the admissible set ``Q``."""
    if not isinstance(Q, AdmissibleSet):
        Q = AdmissibleSet(X, Q)
    if s in Q:
        raise PreconditionError("the subspace is already in the admissible set")
    Q.with_subspace(s)  # validates admissibility of the extension
    below = _subspaces_below(X, s)
    products = []
    outer = nabla_symbol(X, _complement(X, s))
    for t in below:
        lhs = outer * _restricted_nabla(X, s, t)
        rhs = nabla_symbol(X, _complement(X, t))
        products.append({"t": sorted(t.indices), "holds": lhs == rhs})
        if lhs != rhs:
            raise CertificationFailed("product identity fails", t=sorted(t.indices))
    I = ktheory_presentation(X, Q, order)
    colon = I.colon(outer)
    expected = LaurentIdeal(X.d, [_restricted_nabla(X, s, t) for t in below], order)
    if colon != expected:
        raise CertificationFailed("colon identity fails", s=sorted(s.indices),
                                  Q=Q.to_json(), colon=colon.to_json())
    return {"Q": Q.to_json(), "s": sorted(s.indices), "products": products,
            "colon": colon.to_json(), "expected": expected.to_json(), "colon_holds": True}


def admissible_orderings(X, Q=None):
    """All orders of adding the subspaces of ``Q`` (default: every proper nonzero
    rational subspace) so that every prefix stays admissible."""
    target = list(Q.subspaces if Q is not None else _proper_nonzero(X))
    out = []
    for perm in permutations(target):
        seen = set()
        ok = True
        for s in perm:
            if any(t.indices < s.indices and t.dim > 0 and t.indices not in seen for t in target):
                ok = False
                break
            seen.add(s.indices)
        if ok:
            out.append(perm)
    return out


def certify_ordering(X, ordering, order="grevlex"):
    Q = AdmissibleSet(X, [])
    steps = []
    for s in ordering:
        steps.append(induction_step_certify(X, Q, s, order))
        Q = Q.with_subspace(s)
    return steps


def ses_rank_certify(X, T, A):
    """``dim DM*_T = dim DM*_{T ∪ A} + [Z^d : Z(X \\ A)]`` for a semilocal step."""
    A = frozenset(A)
    T2 = T.with_set(A)
    if T2 == T:
        raise PreconditionError("adding the set does not change the family")
    if A not in T2.minimal:
        raise PreconditionError("the added set must be minimal in the larger family")
    for fam in (T, T2):
        ok, _ = is_semilocal(X, fam)
        if not ok:
            raise PreconditionError("both families must be semilocal")
    small = ideal_J(X, T).dimension()
    big = ideal_J(X, T2).dimension()
    rest = X.sub(X.complement(A))
    index = linalg.lattice_index(linalg.columns_to_matrix(rest, X.d)) if rest else linalg.INFINITE
    if small != big + index:
        raise CertificationFailed("rank identity fails", small=small, big=big, index=index)
    return {"T": T.to_json(), "A": sorted(A), "dim_T": small, "dim_T_with_A": big,
            "index": index, "holds": True}


def semilocal_chains(X, cell):
    """Maximal chains from ``L_Omega`` down to ``L(X)``, one minimal set at a time.

    Each chain is a list of ``(T, A)`` with ``T ∪ {A}`` the previous family."""
    top = upset_L_Omega(X, cell)
    bottom = upset_L(X)
    chains = []

    def walk(T, acc):
        steps = [A for A in T.minimal if A not in bottom]
        if not steps:
            chains.append(acc)
            return
        for A in steps:
            smaller = T.without_minimal(A)
            walk(smaller, acc + [(smaller, A)])

    walk(top, [])
    return chains


def rank_telescope(X, cell):
    """Certify every step of every maximal semilocal chain under ``cell``."""
    out = []
    for chain in semilocal_chains(X, cell):
        steps = [ses_rank_certify(X, T, A) for T, A in chain]
        start = ideal_J(X, upset_L_Omega(X, cell)).dimension()
        end = ideal_J(X, upset_L(X)).dimension()
        total = start + sum(s["index"] for s in steps)
        out.append({"steps": steps, "start": start, "end": end, "telescopes": total == end})
    return out


def dpv_filtration_certify(X, i, order="grevlex"):
    """Layer identities ``J_{k+1} = J_k + (nabla_{X \\ s})_{dim s = k}`` and
    ``(J_k : nabla_{X \\ s}) ⊇ (nabla_{s \\ t})_{t < s}`` for ``k = i..d``."""
    if not 1 <= i <= X.d:
        raise PreconditionError(f"need 1 <= i <= d, got {i}")
    subs = rational_subspaces(X)
    layers = []
    for k in range(i, X.d + 1):
        Jk = ideal_J_i(X, k, order=order)
        Jn = ideal_J_i(X, k + 1, order=order)
        layer = [s for s in subs if s.dim == k]
        added = LaurentIdeal(X.d, list(Jk.gens) + [nabla_symbol(X, _complement(X, s))
                                                     for s in layer], order)
        if set(added.gens) != set(Jn.gens):
            raise CertificationFailed("generator identity for the filtration fails", k=k)
        pieces = []
        for s in layer:
            outer = nabla_symbol(X, _complement(X, s))
            want = LaurentIdeal(X.d, [_restricted_nabla(X, s, t) for t in _subspaces_below(X, s)],
                                order)
            colon = Jk.colon(outer)
            if not colon.contains_ideal(want):
                raise CertificationFailed("colon inclusion fails", k=k, s=sorted(s.indices))
            pieces.append({"s": sorted(s.indices), "inclusion": True,
                           "equality": want.contains_ideal(colon)})
        layers.append({"k": k, "generator_identity": True, "subspaces": pieces})
    return {"i": i, "layers": layers, "layer_count": len(layers)}


def dpv_rank_decomposition(X):
    """Per-dimension sums of lattice volumes of ``Z(X ∩ s)`` against the point count."""
    per_dim = {}
    detail = []
    for s in rational_subspaces(X):
        v = zonotope_volume_in_span(X, s)
        per_dim[s.dim] = per_dim.get(s.dim, 0) + v
        detail.append({"subspace": sorted(s.indices), "dim": s.dim, "volume": v})
    total = sum(per_dim.values())
    points = zonotope_lattice_points(X)
    return {"layers": [per_dim.get(k, 0) for k in range(X.d + 1)], "total": total,
            "lattice_points": points, "holds": total == points, "subspaces": detail}


def local_dimensions(X, order="grevlex"):
    return [ideal_J(X, upset_L_Omega(X, c), order=order).dimension() for c in big_cells(X)]
