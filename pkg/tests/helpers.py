"""Shared oracles and builders for the test suite.

These are deliberately written as independent, brute-force implementations:
set-fixpoint string enumeration instead of CYK, walk enumeration instead of
Kahn's algorithm, pair decoding instead of grammar parsing.  Tests compare
the fast library code against these slow-but-obvious routines.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Iterable, Iterator, Optional

from lcreach import (
    DIRECTED,
    Cfg,
    Dfa,
    LabeledGraph,
    VcInstance,
    d2_member,
    string_path,
)


def derivable_strings(g: Cfg, max_len: int) -> dict[str, set[str]]:
    """Exact set of terminal strings of length <= max_len per nonterminal.

    Kleene iteration over the rule system: repeatedly substitute known
    strings into rule bodies, pruning concatenations over budget, until
    nothing new appears.  Complete for the bounded-length fragment because
    a derivation of a short string only ever passes through short pieces.
    """
    known: dict[str, set[str]] = {A: set() for A in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for head, body in g.productions:
            partial = {""}
            for sym in body:
                pieces = known[sym] if sym in g.nonterminals else {sym}
                grown = set()
                for prefix in partial:
                    room = max_len - len(prefix)
                    grown.update(prefix + s for s in pieces if len(s) <= room)
                partial = grown
                if not partial:
                    break
            fresh = partial - known[head]
            if fresh:
                known[head].update(fresh)
                changed = True
    return known


def language_upto(g: Cfg, max_len: int) -> set[str]:
    return derivable_strings(g, max_len)[g.start]


_DD2_PAIRS = {"(a": "(", "b)": ")", "[c": "[", "d]": "]"}


def dd2_decode_member(w: str) -> bool:
    """Membership for the doubled-bracket language by inverting the doubling.

    Every member splits into consecutive two-symbol chunks, each the image
    of one plain bracket; decode the chunks and check plain balance.
    """
    if len(w) % 2 != 0 or not w:
        return False
    decoded = []
    for i in range(0, len(w), 2):
        bracket = _DD2_PAIRS.get(w[i : i + 2])
        if bracket is None:
            return False
        decoded.append(bracket)
    return d2_member("".join(decoded))


def has_directed_cycle(g: LabeledGraph) -> bool:
    """Walk-enumeration cycle detector (independent of topological sorting).

    A directed cycle exists iff some vertex can walk back to itself in at
    most n steps.
    """
    succ = defaultdict(set)
    for e in g.edges:
        succ[e.u].add(e.v)
    for start in range(g.vertex_count):
        frontier = {start}
        for _ in range(g.vertex_count):
            frontier = {v for u in frontier for v in succ[u]}
            if start in frontier:
                return True
            if not frontier:
                break
    return False


def all_vc_instances(max_n: int) -> Iterator[VcInstance]:
    """Every vertex-cover instance with n <= max_n vertices and every budget."""
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        for mask in range(2 ** len(pairs)):
            edges = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
            for k in range(n + 1):
                yield VcInstance(n, edges, k)


def universal_dfa(alphabet: str) -> Dfa:
    """One accepting state that loops on every symbol (accepts everything)."""
    return Dfa(
        state_count=1,
        alphabet=frozenset(alphabet),
        delta={(0, ch): 0 for ch in alphabet},
        start=0,
        accepting=frozenset({0}),
    )


def fragment_graph(word: str, alphabet: Optional[str] = None) -> LabeledGraph:
    """A straight-line graph spelling ``word`` from vertex 0 to the last."""
    frag = string_path(word)
    return LabeledGraph(
        DIRECTED,
        len(word) + 1,
        frag.edges,
        frag.first,
        frag.last,
        frozenset(alphabet if alphabet is not None else word),
    )


def strings_over(alphabet: str, length: int) -> Iterator[str]:
    for combo in itertools.product(sorted(alphabet), repeat=length):
        yield "".join(combo)


def random_total_dfa(rng, n_states: int, alphabet: str) -> Dfa:
    delta = {
        (q, ch): rng.randrange(n_states) for q in range(n_states) for ch in alphabet
    }
    accepting = frozenset(q for q in range(n_states) if rng.random() < 0.4)
    return Dfa(n_states, frozenset(alphabet), delta, 0, accepting)


def walk_budget(g: LabeledGraph, max_len: int, cap: int = 10**6) -> int:
    """Number of walks from the source of length <= max_len, capped at ``cap``.

    Upper-bounds the state count of bounded enumeration, so it serves as a
    cheap feasibility screen before running the enumerator on a random
    instance.
    """
    from lcreach import adjacency

    counts = [0] * g.vertex_count
    counts[g.source] = 1
    adj = adjacency(g)
    total = 1
    for _ in range(max_len):
        new = [0] * g.vertex_count
        for v, c in enumerate(counts):
            if c:
                for _, head, _, _ in adj[v]:
                    new[head] += c
        counts = new
        total += sum(counts)
        if total > cap:
            return cap + 1
    return total
