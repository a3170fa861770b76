"""Grassmann algebras, their standard Poisson bracket, and Grassmann envelopes."""

from __future__ import annotations

import itertools
import os
from fractions import Fraction

from .superalg import SuperAlgebra

DEFAULT_DIM_CAP = 4096


def dim_cap(default: int = DEFAULT_DIM_CAP) -> int:
    return int(os.environ.get("KANTOR_DIM_CAP", default))


class DimensionCapError(ValueError):
    pass


def monomials(n: int) -> list[tuple[int, ...]]:
    """Subsets of {1..n}, ordered by size then lexicographically."""
    return [s for r in range(n + 1) for s in itertools.combinations(range(1, n + 1), r)]


def monomial_label(s: tuple[int, ...], n: int) -> str:
    if not s:
        return "1"
    sep = "" if n < 10 else "."
    return sep.join(f"xi{i}" for i in s)


def _merge_sign(s: tuple[int, ...], t: tuple[int, ...]) -> int:
    # transpositions needed to sort the concatenation s + t
    inversions = sum(1 for a in s for b in t if a > b)
    return -1 if inversions % 2 else 1


def grassmann_algebra(n: int) -> SuperAlgebra:
    """G_n on generators xi1..xin; xi_i^2 = 0, xi_i xi_j = -xi_j xi_i."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if 2 ** n > dim_cap():
        raise DimensionCapError(f"2^{n} exceeds the dimension cap {dim_cap()}")
    mons = monomials(n)
    index = {s: i for i, s in enumerate(mons)}
    sc = {}
    for s in mons:
        for t in mons:
            if set(s) & set(t):
                continue
            u = tuple(sorted(s + t))
            sc[(index[s], index[t])] = {index[u]: _merge_sign(s, t)}
    return SuperAlgebra([monomial_label(s, n) for s in mons], [len(s) % 2 for s in mons], sc,
                        f"G{n}", unit=0, metadata={"generator": "grassmann", "n": n})


def grassmann_monomials(G: SuperAlgebra) -> list[tuple[int, ...]]:
    return monomials(G.metadata["n"])


def left_derivative(s: tuple[int, ...], i: int) -> tuple[int, tuple[int, ...]] | None:
    """d/dxi_i of the monomial xi_s: move xi_i to the front, then drop it."""
    if i not in s:
        return None
    pos = s.index(i)
    return (-1 if pos % 2 else 1), s[:pos] + s[pos + 1:]


def grassmann_poisson_bracket(n: int):
    """{f, g} = (-1)^{p(f)} sum_i (d f/d xi_i)(d g/d xi_i), self-validated."""
    from .bracket import Bracket, check_poisson, is_superskew
    if n < 1:
        raise ValueError("the Poisson bracket needs n >= 1")
    G = grassmann_algebra(n)
    mons = monomials(n)
    index = {s: i for i, s in enumerate(mons)}
    consts: dict[tuple[int, int], dict[int, Fraction]] = {}
    for s in mons:
        for t in mons:
            row: dict[int, Fraction] = {}
            for i in range(1, n + 1):
                ds, dt = left_derivative(s, i), left_derivative(t, i)
                if ds is None or dt is None:
                    continue
                (e1, s1), (e2, t1) = ds, dt
                if set(s1) & set(t1):
                    continue
                u = tuple(sorted(s1 + t1))
                c = (-1) ** (len(s) % 2) * e1 * e2 * _merge_sign(s1, t1)
                row[index[u]] = row.get(index[u], 0) + c
            row = {k: Fraction(v) for k, v in row.items() if v}
            if row:
                consts[(index[s], index[t])] = row
    br = Bracket(G, consts, name=f"poisson(G{n})")
    if not is_superskew(br) or not check_poisson(br):
        raise AssertionError("Grassmann Poisson bracket failed its self-test")
    return br


def grassmann_envelope(A: SuperAlgebra, n: int) -> SuperAlgebra:
    """G_0 (x) A_0 + G_1 (x) A_1 inside G_n (x) A, as an ordinary (all-even) algebra.

    (g (x) a)(h (x) b) = (-1)^{p(a) p(h)} gh (x) ab.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    G = grassmann_algebra(n)
    pairs = [(g, a) for g in range(G.dim) for a in range(A.dim) if G.parity[g] == A.parity[a]]
    if len(pairs) > dim_cap():
        raise DimensionCapError(f"envelope dimension {len(pairs)} exceeds the cap {dim_cap()}")
    index = {p: i for i, p in enumerate(pairs)}
    # products of A indexed by left factor for speed
    a_rows: dict[int, list] = {}
    for (a, b), row in A.sc.items():
        a_rows.setdefault(a, []).append((b, row))
    g_rows: dict[int, list] = {}
    for (g, h), row in G.sc.items():
        g_rows.setdefault(g, []).append((h, row))
    sc = {}
    for (g, a) in pairs:
        for h, grow in g_rows.get(g, []):
            ((gh, gc),) = grow.items()
            sign = -gc if A.parity[a] * G.parity[h] else gc
            for b, arow in a_rows.get(a, []):
                if G.parity[h] != A.parity[b]:
                    continue
                out = {index[(gh, k)]: sign * c for k, c in arow.items()}
                sc[(index[(g, a)], index[(h, b)])] = out
    labels = [f"{G.basis[g]}|{A.basis[a]}" for g, a in pairs]
    return SuperAlgebra(labels, [0] * len(pairs), sc, f"G{n}({A.name})",
                        metadata={"envelope_of": A.name, "n": n})
