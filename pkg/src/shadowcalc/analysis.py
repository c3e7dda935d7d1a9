"""Obstructions, classification tables, cut-system counts and genus bounds."""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .polyhedron import UndefinedComplexityError, as_fraction, weighted_complexity

NOT_A_SHADOW = "NotAShadow"
CANDIDATE = "Candidate"


# ----------------------------------------------------------- manifold names

_ATOM = re.compile(r"^(S4|CP2BAR|CP2|S2xS2|S1xS3|S_(\d+)|S'_(\d+))$")
_ATOM_ORDER = ("S4", "CP2", "CP2BAR", "S2xS2", "S1xS3")


def _atom_key(a):
    if a in _ATOM_ORDER:
        return (_ATOM_ORDER.index(a), 0, a)
    return (len(_ATOM_ORDER), int(a.split("_")[1]), a)


def _check_atom(a):
    m = _ATOM.match(a)
    if not m:
        raise ValueError(f"unknown manifold {a!r}")
    p = m.group(2) or m.group(3)
    if p is not None and int(p) < 2:
        raise ValueError("S_p needs p >= 2")
    return a


@dataclass(frozen=True)
class ManifoldExpr:
    """Connected sum of named closed 4-manifolds, as a multiset of atoms."""
    atoms: tuple  # sorted (atom, count) pairs; S4 only when alone

    def __post_init__(self):
        items = self.atoms.items() if isinstance(self.atoms, dict) else self.atoms
        acc = {}
        for a, n in items:
            _check_atom(a)
            if n < 0:
                raise ValueError("negative multiplicity")
            if n:
                acc[a] = acc.get(a, 0) + n
        acc.pop("S4", None)
        if not acc:
            acc = {"S4": 1}
        object.__setattr__(self, "atoms", tuple(sorted(acc.items(), key=lambda t: _atom_key(t[0]))))

    @classmethod
    def parse(cls, text):
        acc = {}
        for term in text.replace(" ", "").split("#"):
            m = re.match(r"^(\d*)\(?([^()]+)\)?$", term)
            if not m:
                raise ValueError(f"cannot parse {term!r}")
            n = int(m.group(1)) if m.group(1) else 1
            acc[m.group(2)] = acc.get(m.group(2), 0) + n
        return cls(acc)

    def connected_sum(self, other):
        acc = dict(self.atoms)
        for a, n in other.atoms:
            acc[a] = acc.get(a, 0) + n
        return ManifoldExpr(acc)

    __add__ = connected_sum

    @property
    def b2(self):
        weights = {"CP2": 1, "CP2BAR": 1, "S2xS2": 2}
        return sum(weights.get(a, 0) * n for a, n in self.atoms)

    def __str__(self):
        parts = []
        for a, n in self.atoms:
            name = f"({a})" if a in ("S1xS3", "S2xS2") and len(self.atoms) > 1 else a
            parts.append(name if n == 1 else f"{n}{name}")
        return "#".join(parts)

    __repr__ = __str__


def M(text):
    return ManifoldExpr.parse(text)


# ----------------------------------------------------------------- verdicts

@dataclass(frozen=True)
class ObstructionVerdict:
    status: str
    rule: str
    detail: str = ""
    citation: str = ""
    curated: bool = False
    shadow_of: tuple = None  # ManifoldExpr values the polyhedron can be a shadow of

    def __post_init__(self):
        if self.status not in (NOT_A_SHADOW, CANDIDATE):
            raise ValueError("unknown status")
        if self.status == NOT_A_SHADOW and not self.rule:
            raise ValueError("a negative verdict needs a rule")

    def to_json(self):
        out = {"status": self.status, "rule": self.rule, "detail": self.detail,
               "citation": self.citation, "curated": self.curated}
        if self.shadow_of is not None:
            out["shadow_of"] = [str(m) for m in self.shadow_of]
        return out


def costantino_check(h1, h2):
    """A polyhedron with H2 = 0 and torsion in H1 is not a shadow."""
    if h2.is_trivial and h1.has_torsion:
        return ObstructionVerdict(NOT_A_SHADOW, "homology",
                                  f"H1 = {h1} has torsion and H2 = 0",
                                  "Costantino's homological obstruction")
    return ObstructionVerdict(CANDIDATE, "homology", "rule does not apply")


def structural_checks(s):
    if s.is_closed_surface_positive_genus:
        return ObstructionVerdict(NOT_A_SHADOW, "closed_surf",
                                  "closed surface of positive genus",
                                  "closed surfaces other than S^2 are not shadows")
    closed = s.boundary_components == 0
    if closed and s.has_singular_set and len(s.regions) == 1:
        return ObstructionVerdict(NOT_A_SHADOW, "closed_polyh",
                                  "closed polyhedron with one region and singular set",
                                  "closed polyhedra with one region and nonempty "
                                  "singular set are not shadows")
    return ObstructionVerdict(CANDIDATE, "structure", "rule does not apply")


@dataclass(frozen=True)
class ManifoldFamily:
    """W' # h(S2xS2) # k CP2 # l CP2BAR with W' from a fixed list."""
    bases: tuple

    def members(self, b2_max):
        out = []
        for base in self.bases:
            for h in range(b2_max // 2 + 1):
                for k in range(b2_max - 2 * h + 1):
                    for l in range(b2_max - 2 * h - k + 1):
                        out.append(base + ManifoldExpr({"S2xS2": h, "CP2": k, "CP2BAR": l}))
        return sorted(set(out), key=str)

    def __str__(self):
        names = " or ".join(str(b) for b in self.bases)
        return f"W'#h(S2xS2)#kCP2#lCP2BAR, W' = {names}"


def martelli_family(pi1_size, witness=None):
    """Closed 4-manifolds with a special shadow without true vertices, by |pi_1|."""
    bases = {1: ("S4",), 2: ("S_2", "S'_2"), 3: ("S_3",)}
    if pi1_size not in bases:
        raise ValueError("pi1_size must be 1, 2 or 3")
    chosen = bases[pi1_size]
    if witness is not None:
        chosen = tuple(b for b in chosen if b == str(witness))
        if not chosen:
            raise ValueError("witness not in the family")
    return ManifoldFamily(tuple(M(b) for b in chosen))


# ------------------------------------------------------ cut-system counting

class SingularSetEmptyError(ValueError):
    """Cut-system counts need a nonempty singular set."""


@dataclass(frozen=True)
class CutSystemStats:
    arcs_per_region: tuple
    total_arcs: int
    n_prime: int
    tau_arcs: int
    sigma_genus: int
    destabilized_bound: int
    chi_gamma: int

    def to_json(self):
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def cut_system_stats(s):
    if not s.has_singular_set:
        raise SingularSetEmptyError("the singular set is empty")
    m = s.true_vertices
    arcs = tuple(1 - r.chi for r in s.regions)
    n = sum(arcs)
    tau = 2 + 2 * m + n
    return CutSystemStats(arcs, n, m + n + 1, tau, tau + 1, tau, -(m + n))


def genus_bound(s):
    """Upper bound on the trisection genus of a 4-manifold with shadow s."""
    if s.is_closed_surface_positive_genus:
        raise UndefinedComplexityError("c_r is not defined for closed surfaces other than S^2")
    if s.is_sphere:
        return 1
    c = weighted_complexity(s)
    if not s.has_singular_set:
        # a surface with boundary is a shadow of k(S^1 x S^3) with k = 2 c_{1/2}
        return int(2 * c.value(Fraction(1, 2)))
    return int(2 + 2 * c.value(Fraction(1, 2)))


# ------------------------------------------------------------- trisections

def destab_triple(data):
    """Whether three curves form a destabilization triple.

    `data` has 3x3 symmetric entries ``parallel`` (booleans) and
    ``intersections`` (geometric intersection numbers), indexed by
    (alpha, beta, gamma).
    """
    par = data.get("parallel") if isinstance(data, dict) else None
    inter = data.get("intersections") if isinstance(data, dict) else None
    for mat in (par, inter):
        if mat is None or len(mat) != 3 or any(len(row) != 3 for row in mat):
            raise ValueError("expected 3x3 parallel and intersection data")
        if any(mat[i][j] != mat[j][i] for i in range(3) for j in range(3)):
            raise ValueError("data must be symmetric")
    if any(int(inter[i][j]) < 0 for i in range(3) for j in range(3)):
        raise ValueError("intersection numbers must be non-negative")
    pairs = [(i, j) for i in range(3) for j in range(i + 1, 3) if par[i][j]]
    if len(pairs) != 1:
        return False
    i, j = pairs[0]
    k = 3 - i - j
    return inter[i][k] == 1 and inter[j][k] == 1


@dataclass(frozen=True)
class TrisectionParams:
    g: int
    k1: int
    k2: int
    k3: int

    @property
    def ks(self):
        return (self.k1, self.k2, self.k3)

    def euler_characteristic(self):
        return 2 + self.g - sum(self.ks)

    def diagnostics(self):
        out = []
        if min(self.g, *self.ks) < 0:
            out.append("negative parameter")
        if max(self.ks) > self.g:
            out.append("max k_i exceeds g")
        return out

    def __str__(self):
        return f"({self.g};{self.k1},{self.k2},{self.k3})"


class TrisectionError(ValueError):
    pass


def trisection_ops(p, action="validate", index=None):
    """``validate`` returns diagnostics; ``stabilize`` with index i in 1..3
    returns the parameters after one stabilization, which raises the genus
    by one and, by our convention, k_i by one."""
    if action == "validate":
        return p.diagnostics()
    if action == "stabilize":
        if p.diagnostics():
            raise TrisectionError("; ".join(p.diagnostics()))
        if index not in (1, 2, 3):
            raise TrisectionError("stabilize needs index 1, 2 or 3")
        ks = list(p.ks)
        ks[index - 1] += 1
        return TrisectionParams(p.g + 1, *ks)
    raise TrisectionError(f"unknown action {action!r}")


# ------------------------------------------------------ classification data

_TABLES = {
    Fraction(0): ("S4", "CP2", "CP2BAR", "S2xS2", "2CP2", "CP2#CP2BAR", "2CP2BAR"),
    Fraction(1, 2): ("3CP2", "2CP2#CP2BAR", "CP2#2CP2BAR", "3CP2BAR", "S1xS3",
                     "(S1xS3)#CP2", "(S1xS3)#CP2BAR", "S_2", "S'_2", "S_3"),
}
TABLE_CITATIONS = {
    Fraction(0): "classification of closed 4-manifolds with 1/2-weighted complexity 0",
    Fraction(1, 2): "classification of closed 4-manifolds with 1/2-weighted complexity 1/2",
}


def _level(level):
    try:
        lv = as_fraction(level)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ValueError(f"no table for level {level!r}")
    if lv not in _TABLES:
        raise ValueError(f"no table for level {level}")
    return lv


def classification_tables(level):
    """Closed 4-manifolds with 1/2-weighted shadow complexity equal to `level`."""
    return [M(s) for s in _TABLES[_level(level)]]


def classification_table_data(level):
    lv = _level(level)
    return {"level": str(lv), "curated": True, "citation": TABLE_CITATIONS[lv],
            "manifolds": [str(m) for m in classification_tables(lv)]}


# Labels of the polyhedra with c_{1/2} <= 1/2, the lemma-level
# conclusions about them, and whether each conclusion is only cited.
CENSUS_LABELS = {
    "a1": "v b1 B; v b2 B; e b1.0 b2.0 0",
    "a2": "v z Y3; v b B; e z.0 b.0 0",
    "a3": "v a Y111; v b B; v d1 D; v d2 D; e a.0 b.0 0; e a.1 d1.0 0; e a.2 d2.0 0",
    "a4": "v y Y12; v b B; v d D; e y.0 b.0 0; e y.1 d.0 0",
    "a5": "v y Y12; v b B; v d D; e y.1 b.0 0; e y.0 d.0 0",
    "a6": "v y Y12; v z Y3; v d D; e y.1 z.0 0; e y.0 d.0 0",
    "a7": "v z1 Y3; v z2 Y3; e z1.0 z2.0 0",
    "a8": "v y Y12; v z Y3; v d D; e y.0 z.0 0; e y.1 d.0 0",
    "a9": "v a Y111; v z Y3; v d1 D; v d2 D; e a.0 z.0 0; e a.1 d1.0 0; e a.2 d2.0 0",
    "a10": "v y1 Y12; v y2 Y12; v d1 D; v d2 D; e y1.0 y2.0 0; e y1.1 d1.0 0; e y2.1 d2.0 0",
    "a11": "v a Y111; v y Y12; v d1 D; v d2 D; v d3 D; e a.0 y.0 0; e a.1 d1.0 0; "
           "e a.2 d2.0 0; e y.1 d3.0 0",
    "a12": "v a Y111; v y Y12; v d1 D; v d2 D; v d3 D; e a.0 y.1 0; e a.1 d1.0 0; "
           "e a.2 d2.0 0; e y.0 d3.0 0",
    "a13": "v y1 Y12; v y2 Y12; v d1 D; v d2 D; e y1.0 y2.1 0; e y1.1 d1.0 0; e y2.0 d2.0 0",
    "a14": "v y1 Y12; v y2 Y12; v d1 D; v d2 D; e y1.1 y2.1 0; e y1.0 d1.0 0; e y2.0 d2.0 0",
    "a15^0": "v y Y12; e y.0 y.1 0",
    "a15^1": "v y Y12; e y.0 y.1 1",
    "a16": "v a1 Y111; v a2 Y111; v d1 D; v d2 D; v d3 D; v d4 D; e a1.1 a2.0 0; "
           "e a1.0 d1.0 0; e a1.2 d2.0 0; e a2.1 d3.0 0; e a2.2 d4.0 0",
    "a17^0": "v a Y111; v d D; e a.0 a.1 0; e a.2 d.0 0",
    "a17^1": "v a Y111; v d D; e a.0 a.1 1; e a.2 d.0 0",
    "m1": "v m B; v y Y2; e y.0 m.0 0",
    "m2": "v z Y3; v y Y2; e z.0 y.0 0",
    "m3": "v y Y12; v m Y2; v d D; e y.1 m.0 0; e y.0 d.0 0",
    "m4": "v y Y12; v m Y2; v d D; e y.0 m.0 0; e y.1 d.0 0",
    "m5": "v a Y111; v m Y2; v d1 D; v d2 D; e a.0 m.0 0; e a.1 d1.0 0; e a.2 d2.0 0",
    # complexity zero
    "X1": "v d1 D; v d2 D; e d1.0 d2.0 0",
    "X2": "v a Y111; v d1 D; v d2 D; v d3 D; e a.0 d1.0 0; e a.1 d2.0 0; e a.2 d3.0 0",
    "Y12+2D": "v y Y12; v d1 D; v d2 D; e y.0 d1.0 0; e y.1 d2.0 0",
    "Y3+D": "v z Y3; v d D; e z.0 d.0 0",
    "disk": "v d D; v b B; e d.0 b.0 0",
}

_TABLE0 = _TABLES[Fraction(0)]
_S1S3 = ("S1xS3", "(S1xS3)#CP2", "(S1xS3)#CP2BAR")
_A16 = ("S4", "CP2", "CP2BAR", "S2xS2", "2CP2", "CP2#CP2BAR", "2CP2BAR", "3CP2",
        "2CP2#CP2BAR", "CP2#2CP2BAR", "3CP2BAR")

# label -> (status, rule, detail, manifolds or None, curated)
_LEMMAS = {
    "a1": (CANDIDATE, "thickening", "unique thickening S^1 x B^3", ("S1xS3",), True),
    "a2": (CANDIDATE, "thickening", "unique thickening S^1 x B^3", ("S1xS3",), True),
    "a3": (CANDIDATE, "collapse", "collapses onto S^2, so sc_1/2 = 0", _TABLE0, True),
    "a4": (CANDIDATE, "collapse", "collapses onto RP^2, so sc_1/2 = 0", _TABLE0, True),
    "a5": (CANDIDATE, "collapse", "collapses onto a complexity-zero polyhedron", _TABLE0, True),
    "a6": (NOT_A_SHADOW, "homology", "H2 = 0 and H1 has torsion", None, False),
    "a7": (NOT_A_SHADOW, "homology", "H2 = 0 and H1 has torsion", None, False),
    "a8": (NOT_A_SHADOW, "homology", "H2 = 0 and H1 has torsion", None, False),
    "a9": (CANDIDATE, "finite_pi1", "pi1 = Z/3, b2 = 1, no true vertices; gleam (1,-1,1)",
           ("S_3",), True),
    "a10": (CANDIDATE, "finite_pi1", "pi1 = Z/2, b2 = 1, no true vertices",
            ("S_2", "S'_2"), True),
    "a11": (CANDIDATE, "finite_pi1", "simply connected, b2 <= 2, so sc_1/2 = 0", _TABLE0, True),
    "a12": (CANDIDATE, "finite_pi1", "simply connected, b2 <= 2, so sc_1/2 = 0", _TABLE0, True),
    "a13": (CANDIDATE, "finite_pi1", "simply connected, b2 <= 2, so sc_1/2 = 0", _TABLE0, True),
    "a14": (CANDIDATE, "finite_pi1", "simply connected, b2 <= 2, so sc_1/2 = 0", _TABLE0, True),
    "a15^0": (NOT_A_SHADOW, "a15_handles", "the 3-manifold group <x,y | xyx^-1y^-2> is not "
              "that of a connected sum of S^1 x S^2", None, True),
    "a15^1": (NOT_A_SHADOW, "homology", "H2 = 0 and H1 has torsion", None, False),
    "a16": (CANDIDATE, "finite_pi1", "homeomorphic to X_3", _A16, True),
    "a17^0": (CANDIDATE, "surgery", "boundary analysis of the thickening", _S1S3, True),
    "a17^1": (CANDIDATE, "surgery", "elementary ideals force m = n = 0", _S1S3, True),
    "m1": (CANDIDATE, "thickening", "unique thickening S^1 x B^3", ("S1xS3",), True),
    "m2": (NOT_A_SHADOW, "m2_group", "<x,y | x^2y^3> is not a free group", None, True),
    "m3": (NOT_A_SHADOW, "homology", "H2 = 0 and H1 has torsion", None, False),
    "m4": (NOT_A_SHADOW, "homology", "H2 = 0 and H1 has torsion", None, False),
    "m5": (CANDIDATE, "finite_pi1", "pi1 = Z/2, b2 = 1; gleams (1,-1,1) and (1,-1,0)",
           ("S_2", "S'_2"), True),
    "X1": (CANDIDATE, "sphere", "thickenings of S^2", ("S4", "CP2", "CP2BAR"), True),
    "X2": (CANDIDATE, "complexity0", "special polyhedron without true vertices", _TABLE0, True),
    "Y12+2D": (CANDIDATE, "complexity0", "special polyhedron without true vertices", _TABLE0,
               True),
    "Y3+D": (NOT_A_SHADOW, "closed_polyh", "closed with a single region", None, False),
    "disk": (CANDIDATE, "thickening", "unique thickening B^4", ("S4",), True),
}


@lru_cache(maxsize=None)
def census_label_index():
    """Canonical form -> label for the labelled polyhedra."""
    from .graph import canonical_form, parse_graph
    return {canonical_form(parse_graph(t)): label for label, t in CENSUS_LABELS.items()}


def census_label(canonical):
    return census_label_index().get(canonical)


def curated_verdict(label):
    status, rule, detail, manifolds, curated = _LEMMAS[label]
    shadow_of = tuple(M(m) for m in manifolds) if manifolds is not None else None
    return ObstructionVerdict(status, rule, f"{label}: {detail}",
                              f"census lemma for {label}", curated, shadow_of)


def verdicts_for(entry):
    """All verdicts for a census entry: the computed rules, then curated data."""
    out = [structural_checks(entry.summary),
           costantino_check(entry.homology[1], entry.homology[2])]
    label = census_label(entry.canonical)
    if label is not None:
        out.append(curated_verdict(label))
    return out


def overall_status(verdicts):
    statuses = [v["status"] if isinstance(v, dict) else v.status for v in verdicts]
    return NOT_A_SHADOW if NOT_A_SHADOW in statuses else CANDIDATE

