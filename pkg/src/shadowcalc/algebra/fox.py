"""Fox free differential calculus and Alexander matrices."""

from dataclasses import dataclass

from .groups import free_reduce
from .laurent import LaurentMatrix, LaurentPoly
from .snf import smith


class InconsistentAbelianizationError(ValueError):
    """The supplied map is not defined on all generators or is not a homomorphism."""


@dataclass(frozen=True)
class GroupRingElement:
    """Finite integer combination of reduced words in a free group."""
    terms: tuple  # sorted (word, coefficient) pairs

    def __post_init__(self):
        items = self.terms.items() if isinstance(self.terms, dict) else self.terms
        acc = {}
        for w, c in items:
            w = free_reduce(w)
            acc[w] = acc.get(w, 0) + c
        object.__setattr__(self, "terms", tuple(sorted((w, c) for w, c in acc.items() if c)))

    def __add__(self, other):
        return GroupRingElement(self.terms + other.terms)

    def __neg__(self):
        return GroupRingElement(tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def left_mul(self, word):
        return GroupRingElement(tuple((tuple(word) + w, c) for w, c in self.terms))

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def image(self, phi):
        """Apply a map sending each word to a Laurent monomial."""
        total = None
        for w, c in self.terms:
            t = phi(w) * c
            total = t if total is None else total + t
        return total

    def format(self, generators):
        if not self.terms:
            return "0"
        from .groups import GroupPresentation
        p = GroupPresentation(generators, ())
        parts = []
        for w, c in self.terms:
            s = p.word_str(w)
            parts.append(s if c == 1 else ("-" + s if c == -1 else f"{c}*{s}"))
        return " + ".join(parts).replace("+ -", "- ")


def fox_derivative(word, x):
    """Fox derivative of a word with respect to generator index `x` (1-based).

    d(uv)/dx = du/dx + u dv/dx, dx/dx = 1, d(x^-1)/dx = -x^-1.
    """
    terms = {}
    prefix = ()
    for letter in word:
        if letter == x:
            terms[prefix] = terms.get(prefix, 0) + 1
        elif letter == -x:
            w = free_reduce(prefix + (letter,))
            terms[w] = terms.get(w, 0) - 1
        prefix = free_reduce(prefix + (letter,))
    return GroupRingElement(terms)


def _word_image(word, vectors, variables):
    k = len(variables)
    e = [0] * k
    for letter in word:
        v = vectors[abs(letter) - 1]
        s = 1 if letter > 0 else -1
        for i in range(k):
            e[i] += s * v[i]
    return LaurentPoly.monomial(variables, e)


def free_abelianization_map(p):
    """Exponent vectors of the generators in a basis of the free part of H_1."""
    M = p.exponent_matrix()
    n = len(p.generators)
    if M.size == 0:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    _, D, V, _, _ = smith(M)
    free_cols = [j for j in range(n) if j >= len(D) or D[j][j] == 0]
    # generator i maps to the free coordinates of V^-1 applied to e_i,
    # i.e. to row i of V restricted to the free columns
    return [[V[i][j] for j in free_cols] for i in range(n)]


def abelianization_vectors(p, ab=None):
    """Exponent vector of every generator, in presentation order.

    `ab` maps each generator name to an exponent vector. Without it each
    generator gets its own variable when every relator has zero exponent
    sums, and otherwise the generators are sent to the free abelianization.
    """
    n = len(p.generators)
    if ab is None:
        M = p.exponent_matrix()
        if M.size == 0 or not any(x != 0 for x in M.flat):
            return [[int(i == j) for j in range(n)] for i in range(n)]
        return free_abelianization_map(p)
    missing = [g for g in p.generators if g not in ab]
    if missing:
        raise InconsistentAbelianizationError(f"no image for {', '.join(missing)}")
    vectors = [[int(x) for x in ab[g]] for g in p.generators]
    if len({len(v) for v in vectors}) > 1:
        raise InconsistentAbelianizationError("exponent vectors of different lengths")
    return vectors


def alexander_matrix(p, ab=None, variables=None, strict=False):
    """Matrix whose (i, j) entry is the image of the Fox derivative dr_i/dx_j.

    See `abelianization_vectors` for the meaning of `ab`. With `strict`,
    relators that do not map to 1 are rejected.
    """
    vectors = abelianization_vectors(p, ab)
    k = len(vectors[0]) if vectors else 0
    if variables is None:
        variables = tuple(f"t{i + 1}" for i in range(k))
    variables = tuple(variables)
    if len(variables) != k:
        raise InconsistentAbelianizationError("wrong number of variables")
    if strict:
        one = LaurentPoly.const(variables, 1)
        for r in p.relators:
            if _word_image(r, vectors, variables) != one:
                raise InconsistentAbelianizationError("a relator does not map to 1")

    def phi(w):
        return _word_image(w, vectors, variables)

    rows = []
    for r in p.relators:
        row = []
        for j in range(1, len(p.generators) + 1):
            img = fox_derivative(r, j).image(phi)
            row.append(img if img is not None else LaurentPoly.zero(variables))
        rows.append(tuple(row))
    return LaurentMatrix(tuple(rows), variables)


def fundamental_identity_holds(p, vectors, variables=None):
    """Check sum_j phi(dr/dx_j)(phi(x_j) - 1) = phi(r) - 1 for every relator."""
    k = len(vectors[0]) if vectors else 0
    variables = tuple(variables) if variables else tuple(f"t{i + 1}" for i in range(k))

    def phi(w):
        return _word_image(w, vectors, variables)

    for r in p.relators:
        lhs = LaurentPoly.zero(variables)
        for j in range(1, len(p.generators) + 1):
            img = fox_derivative(r, j).image(phi)
            if img is not None:
                lhs = lhs + img * (phi((j,)) - 1)
        if lhs != phi(r) - 1:
            return False
    return True


def elementary_ideal_check(M, d, mode="is_zero"):
    """Decide whether the d-th elementary ideal of M is the zero ideal.

    E_d is generated by the (n - d)-minors, n being the number of columns.
    Only ``mode="is_zero"`` is supported.
    """
    if mode != "is_zero":
        raise ValueError("only the is_zero mode is supported")
    rows, n = M.shape
    if not 0 <= d <= n:
        raise ValueError("d out of range")
    size = n - d
    if size == 0:
        return False
    if size > rows:
        return True
    return all(m.is_zero() for _, m in M.minors(size))

