"""Finitely generated abelian groups, homology, and group presentations.

A word is a tuple of nonzero integers: ``i`` stands for generator i - 1 and
``-i`` for its inverse.
"""

import re
from dataclasses import dataclass

import numpy as np

from .snf import smith


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion if abs(int(x)) != 1)
        if any(x <= 0 for x in t):
            raise ValueError("torsion coefficients must be positive")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("torsion coefficients must form a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_invariants(cls, rank, factors):
        """Group Z^rank + sum Z/d from arbitrary positive factors, normalized."""
        return cls(rank, _chain(factors))

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    @property
    def has_torsion(self):
        return bool(self.torsion)

    @property
    def order(self):
        """Order of a finite group, None if infinite."""
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["rank"]), tuple(data.get("torsion", ())))

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def _chain(factors):
    """Divisibility-chain form of a list of cyclic orders."""
    fs = [abs(int(d)) for d in factors if abs(int(d)) > 1]
    if not fs:
        return ()
    M = [[fs[i] if i == j else 0 for j in range(len(fs))] for i in range(len(fs))]
    _, D, _, _, _ = smith(M)
    return tuple(D[i][i] for i in range(len(fs)) if D[i][i] > 1)


def cokernel(A, ncols=None):
    """Cokernel of the map Z^rows -> Z^cols given by the rows of A (row space quotient)."""
    A = np.asarray(A, dtype=object)
    n = A.shape[1] if A.ndim == 2 else (ncols or 0)
    if A.size == 0:
        return AbelianGroup(n)
    _, D, _, _, _ = smith(A)
    diag = [D[i][i] for i in range(min(len(D), n)) if D[i][i]]
    return AbelianGroup(n - len(diag), tuple(d for d in diag if d > 1))


def homology_of_complex(c):
    """(H0, H1, H2) of a chain complex with boundary maps d1, d2."""
    d1 = np.asarray(c.d1, dtype=object)
    d2 = np.asarray(c.d2, dtype=object)
    n0, n1 = d1.shape
    n2 = d2.shape[1]
    if d2.shape[0] != n1:
        raise ValueError("d1 and d2 have incompatible shapes")
    if n1 and n2 and any(x != 0 for x in (d1.dot(d2)).flat):
        raise ValueError("d1 * d2 is not zero")

    def factors(M):
        if M.size == 0:
            return []
        _, D, _, _, _ = smith(M)
        return [D[i][i] for i in range(min(M.shape)) if D[i][i]]

    f1, f2 = factors(d1), factors(d2)
    h0 = AbelianGroup(n0 - len(f1), tuple(d for d in f1 if d > 1))
    h1 = AbelianGroup(n1 - len(f1) - len(f2), tuple(d for d in f2 if d > 1))
    h2 = AbelianGroup(n2 - len(f2))
    return h0, h1, h2


# ------------------------------------------------------------------ words

def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word):
    w = list(free_reduce(word))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert(word):
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(free_reduce(tuple(r)) for r in self.relators))
        n = len(self.generators)
        for r in self.relators:
            if any(x == 0 or abs(x) > n for x in r):
                raise ValueError("relator uses an unknown generator")

    def exponent_matrix(self):
        M = np.zeros((len(self.relators), len(self.generators)), dtype=object)
        for i, r in enumerate(self.relators):
            for x in r:
                M[i, abs(x) - 1] += 1 if x > 0 else -1
        return M

    def word_str(self, word):
        if not word:
            return "1"
        out = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.generators[abs(word[i]) - 1]
            e = (j - i) * (1 if word[i] > 0 else -1)
            out.append(name if e == 1 else f"{name}^{e}")
            i = j
        sep = "" if all(len(g) == 1 for g in self.generators) else "*"
        return sep.join(out)

    def __str__(self):
        rels = ", ".join(self.word_str(r) for r in self.relators)
        return f"<{','.join(self.generators)} | {rels}>"

    def to_json(self):
        return {"generators": list(self.generators),
                "relators": [self.word_str(r) for r in self.relators]}


def abelianization(p):
    """H_1 of the presented group: cokernel of the exponent-sum matrix."""
    return cokernel(p.exponent_matrix(), len(p.generators))


@dataclass(frozen=True)
class TracedAbelianGroup:
    """An abelian group with an explicit generator for each cyclic summand.

    ``summands`` lists (order, combination) where order is 0 for an infinite
    cyclic summand and combination maps generator names to exponents.
    """
    group: AbelianGroup
    summands: tuple

    def __str__(self):
        parts = []
        for order, combo in self.summands:
            gen = "+".join(f"{c}{name}" if c != 1 else name for name, c in combo) or "0"
            parts.append(f"Z<{gen}>" if order == 0 else f"Z/{order}<{gen}>")
        return " + ".join(parts) if parts else "0"


def h1_from_presentation(p):
    """Abelianization together with generators of its cyclic summands."""
    M = p.exponent_matrix()
    n = len(p.generators)
    if M.size == 0:
        summands = tuple((0, ((g, 1),)) for g in p.generators)
        return TracedAbelianGroup(AbelianGroup(n), summands)
    _, D, _, _, Vinv = smith(M)
    # rows of Vinv give the new basis of Z^n in terms of the generators
    summands = []
    free = []
    for j in range(n):
        d = D[j][j] if j < len(D) else 0
        combo = tuple((p.generators[i], c) for i, c in enumerate(Vinv[j]) if c)
        if d == 0:
            free.append((0, combo))
        elif d > 1:
            summands.append((d, combo))
    group = AbelianGroup(len(free), tuple(d for d, _ in summands))
    return TracedAbelianGroup(group, tuple(free + summands))


# -------------------------------------------------------- parsing and Tietze

_TOKEN = re.compile(r"\s*(\[|\]|\(|\)|,|\^-?\d+|[A-Za-z_][A-Za-z_0-9']*|\S)")


def _tokens(s):
    pos = 0
    out = []
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or not m.group(1):
            break
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_word(text, generators):
    """Parse a word such as ``xyx^-1y^-2``, ``[x,z]`` or ``z^-1(xy^-1xy)^3``.

    Single-letter generator names may be written without separators;
    longer names must be separated by ``*`` or spaces.
    """
    gens = list(generators)
    single = all(len(g) == 1 for g in gens)
    toks = []
    for t in _tokens(text.replace("*", " ").replace("⁻¹", "^-1")):
        if single and re.fullmatch(r"[A-Za-z_][A-Za-z_0-9']*", t) and t not in gens:
            toks.extend(t)
        else:
            toks.append(t)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def power(w):
        nonlocal pos
        t = peek()
        if t is not None and t.startswith("^"):
            pos += 1
            e = int(t[1:])
            w = w * e if e >= 0 else invert(w) * (-e)
        return w

    def seq(stop):
        nonlocal pos
        w = ()
        while peek() is not None and peek() not in stop:
            w += atom()
        return w

    def atom():
        nonlocal pos
        t = peek()
        if t == "(":
            pos += 1
            w = seq((")",))
            if peek() != ")":
                raise ValueError("unbalanced parentheses")
            pos += 1
            return power(w)
        if t == "[":
            pos += 1
            a = seq((",",))
            if peek() != ",":
                raise ValueError("commutator needs two entries")
            pos += 1
            b = seq(("]",))
            if peek() != "]":
                raise ValueError("unbalanced brackets")
            pos += 1
            return power(a + b + invert(a) + invert(b))
        if t == "1":
            pos += 1
            return ()
        if t in gens:
            pos += 1
            return power((gens.index(t) + 1,))
        raise ValueError(f"unexpected token {t!r}")

    w = seq(())
    return free_reduce(w)


def parse_presentation(text):
    """Parse ``<x,y | r1, r2>``; commas inside brackets belong to commutators."""
    s = text.strip()
    s = s.replace("⟨", "<").replace("⟩", ">")
    if not (s.startswith("<") and s.endswith(">")) or "|" not in s:
        raise ValueError("presentation must look like <gens | relators>")
    gens_part, rels_part = s[1:-1].split("|", 1)
    gens = tuple(g.strip() for g in gens_part.split(",") if g.strip())
    rels = []
    depth = 0
    cur = ""
    for ch in rels_part:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            rels.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        rels.append(cur)
    return GroupPresentation(gens, tuple(parse_word(r, gens) for r in rels if r.strip()))


def _substitute(word, gen, replacement):
    out = []
    for x in word:
        if abs(x) == gen:
            out.extend(replacement if x > 0 else invert(replacement))
        else:
            out.append(x)
    return free_reduce(out)


def eliminate_generator(p, rel_index, gen):
    """Tietze move: solve relator `rel_index` for `gen` (which occurs once) and drop both."""
    r = p.relators[rel_index]
    hits = [i for i, x in enumerate(r) if abs(x) == gen]
    if len(hits) != 1:
        raise ValueError("generator must occur exactly once in the relator")
    i = hits[0]
    # r = u g^e v = 1  =>  g^e = u^-1 v^-1
    u, v = r[:i], r[i + 1:]
    sol = free_reduce(invert(u) + invert(v))
    if r[i] < 0:
        sol = invert(sol)
    rels = [_substitute(q, gen, sol) for k, q in enumerate(p.relators) if k != rel_index]

    def shift(w):
        return tuple(x - (1 if x > gen else 0) if x > 0 else x + (1 if -x > gen else 0)
                     for x in w)

    gens = p.generators[:gen - 1] + p.generators[gen:]
    return GroupPresentation(gens, tuple(shift(q) for q in rels))


def simplify_presentation(p, max_length=200):
    """Cheap Tietze simplification: drop trivial relators and eliminate
    generators that occur exactly once in some relator."""
    while True:
        rels = []
        seen = set()
        for r in p.relators:
            r = cyclic_reduce(r)
            if r and r not in seen and invert(r) not in seen:
                seen.add(r)
                rels.append(r)
        p = GroupPresentation(p.generators, tuple(rels))
        best = None
        for k, r in enumerate(p.relators):
            for g in range(1, len(p.generators) + 1):
                if sum(1 for x in r if abs(x) == g) == 1:
                    cost = len(r) * sum(1 for q in p.relators for x in q if abs(x) == g)
                    if best is None or cost < best[0]:
                        best = (cost, k, g)
        if best is None:
            return p
        q = eliminate_generator(p, best[1], best[2])
        if sum(len(r) for r in q.relators) > max_length * max(1, len(q.relators)):
            return p
        p = q
