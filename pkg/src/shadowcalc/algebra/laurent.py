"""Sparse multivariate Laurent polynomials with integer coefficients."""

from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class LaurentPoly:
    variables: tuple
    terms: tuple  # sorted (exponent tuple, coefficient) pairs, no zeros

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        items = self.terms.items() if isinstance(self.terms, dict) else self.terms
        acc = {}
        k = len(self.variables)
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != k:
                raise ValueError("exponent length does not match the variables")
            acc[e] = acc.get(e, 0) + int(c)
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def zero(cls, variables):
        return cls(variables, ())

    @classmethod
    def const(cls, variables, c):
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def monomial(cls, variables, exponents, coeff=1):
        return cls(variables, {tuple(exponents): coeff})

    @classmethod
    def gens(cls, variables):
        variables = tuple(variables)
        k = len(variables)
        return tuple(cls(variables, {tuple(int(i == j) for j in range(k)): 1}) for i in range(k))

    @property
    def dict(self):
        return dict(self.terms)

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError("polynomials over different variables")
            return other
        return LaurentPoly.const(self.variables, int(other))

    def __add__(self, other):
        other = self._coerce(other)
        d = self.dict
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly(self.variables, d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly(self.variables, d)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial() or abs(self.terms[0][1]) != 1:
                raise ValueError("only units have negative powers")
            (e, c), = self.terms
            return LaurentPoly(self.variables, {tuple(x * n for x in e): c ** (-n)})
        out = LaurentPoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, self.terms))

    def unit_ratio(self, other):
        """Monomial u with self = u * other, or None if none exists."""
        other = self._coerce(other)
        if len(self.terms) != len(other.terms):
            return None
        if not self.terms:
            return LaurentPoly.const(self.variables, 1)
        (e1, c1), (e2, c2) = self.terms[0], other.terms[0]
        if abs(c1) != abs(c2):
            return None
        u = LaurentPoly.monomial(self.variables, [a - b for a, b in zip(e1, e2)], c1 // c2)
        return u if u * other == self else None

    def evaluate(self, values):
        from fractions import Fraction
        total = Fraction(0)
        for e, c in self.terms:
            t = Fraction(c)
            for v, x in zip(values, e):
                t *= Fraction(v) ** x
            total += t
        return total

    def to_json(self):
        return {"variables": list(self.variables),
                "terms": [[list(e), c] for e, c in self.terms]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["variables"]), tuple((tuple(e), c) for e, c in data["terms"]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms, key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(v if x == 1 else f"{v}^{x}"
                            for v, x in zip(self.variables, e) if x)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


@dataclass(frozen=True)
class LaurentMatrix:
    rows: tuple  # tuple of tuples of LaurentPoly
    variables: tuple = ()

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if rows and rows[0]:
            object.__setattr__(self, "variables", rows[0][0].variables)
        if len({len(r) for r in rows}) > 1:
            raise ValueError("ragged matrix")

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def submatrix(self, rows, cols):
        return LaurentMatrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows),
                             self.variables)

    def det(self):
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return LaurentPoly.const(self.variables, 1)
        if n == 1:
            return self.rows[0][0]
        total = LaurentPoly.zero(self.variables)
        for j in range(n):
            entry = self.rows[0][j]
            if entry.is_zero():
                continue
            minor = self.submatrix(range(1, n), [c for c in range(n) if c != j]).det()
            total = total + entry * minor * (-1 if j % 2 else 1)
        return total

    def minors(self, size):
        n, m = self.shape
        for rs in combinations(range(n), size):
            for cs in combinations(range(m), size):
                yield (rs, cs), self.submatrix(rs, cs).det()

    def to_json(self):
        return {"variables": list(self.variables),
                "rows": [[[[list(e), c] for e, c in p.terms] for p in r] for r in self.rows]}

    def __str__(self):
        return "\n".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.rows)

