"""Exceptional collections on the scroll and their Ext calculus.

Collections are six-term lists of shifted line bundles and twists of Omega.
Each named collection is produced by a chain of rewrites (tensoring by a line
bundle, or shifting an adjacent pair O(D), O(D+F) by +-F, which is what the
pairwise mutations amount to here) and is compared against its explicit list.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from .chow import (
    DivisorClass,
    EndOmegaTwist,
    LineBundle,
    OmegaDualTwist,
    OmegaTwist,
    Scroll,
    SheafDescriptor,
)
from .cohomology import CohTable, CohValue, sheaf_cohomology
from .errors import DomainError, InternalInconsistency, UnsupportedDescriptor


@dataclass(frozen=True)
class CollectionObject:
    descriptor: SheafDescriptor
    shift: int = 0  # the object is descriptor[shift]

    def __str__(self) -> str:
        return f"{self.descriptor}[{self.shift}]" if self.shift else str(self.descriptor)


@dataclass(frozen=True)
class Collection:
    name: str
    objects: tuple
    t: int | None = None
    chain: tuple = ()

    def __len__(self) -> int:
        return len(self.objects)

    def __str__(self) -> str:
        return "{" + ", ".join(str(o) for o in self.objects) + "}"


T_INDEXED = ("colt", "coltd", "colt2", "coltd2", "col*", "cold*")
NAMES = (
    "col", "cold", "col0", "col00", "cold0", "colt", "coltd", "colt2", "coltd2",
    "col*", "cold*", "col3", "cold3", "col4", "cold4",
)
DUAL_PARTNER = {
    "col": "cold", "col00": "cold0", "colt": "coltd", "colt2": "coltd2",
    "col*": "cold*", "col3": "cold3", "col4": "cold4",
}
DUAL_PARTNER.update({v: k for k, v in list(DUAL_PARTNER.items())})


def _obj(kind: str, a: int, b: int, shift: int = 0) -> CollectionObject:
    D = DivisorClass(a, b)
    desc = LineBundle(D) if kind == "O" else OmegaTwist(D)
    return CollectionObject(desc, shift)


# --- explicit lists ----------------------------------------------------------


def verbatim(S: Scroll, name: str, t: int = 0) -> tuple:
    """The collections written out term by term."""
    c = S.c
    O = lambda a, b, s=0: _obj("O", a, b, s)  # noqa: E731
    W = lambda a, b: _obj("W", a, b)  # noqa: E731
    lists = {
        "col": [O(-2, 0, -2), O(-2, 1, -2), O(-1, 0, -1), O(-1, 1, -1), O(0, -1), O(0, 0)],
        "cold": [O(-1, c - 2), O(-1, c - 1), W(1, -2), W(1, -1), O(0, -1), O(0, 0)],
        "col0": [O(-2, c - 3, -2), O(-2, c - 2, -2), O(-1, c - 3, -1), O(-1, c - 2, -1),
                 O(0, c - 4), O(0, c - 3)],
        "col00": [O(-2, c - 2, -2), O(-2, c - 1, -2), O(-1, c - 3, -1), O(-1, c - 2, -1),
                  O(0, c - 4), O(0, c - 3)],
        "cold0": [O(-1, 0), O(-1, 1), W(1, 1 - c), W(1, 2 - c), O(0, 2 - c), O(0, 3 - c)],
        "colt": [O(-2, 1, -2), O(-2, 2, -2), O(-1, 0, -1), O(-1, 1, -1), O(0, t - 1), O(0, t)],
        "coltd": [O(-1, c - 3), O(-1, c - 2), W(1, -2), W(1, -1), O(0, -t - 1), O(0, -t)],
        "col*": [O(-2, c - 2, -2), O(-2, c - 1, -2), O(-1, c - 3, -1), O(-1, c - 2, -1),
                 O(0, c - 4 + t), O(0, c - 3 + t)],
        "cold*": [O(-1, 0), O(-1, 1), W(1, 1 - c), W(1, 2 - c), O(0, 2 - c - t), O(0, 3 - c - t)],
        "col3": [O(-2, c - 2, -2), O(-2, c - 1, -2), O(-1, 0, -1), O(-1, 1, -1), O(0, -1), O(0, 0)],
        "cold3": [O(-1, 0), O(-1, 1), W(1, -2), W(1, -1), O(0, -1), O(0, 0)],
        "col4": [O(-2, c - 2, -2), O(-2, c - 1, -2), O(-1, 0, -1), O(-1, 1, -1),
                 O(0, 2 - c), O(0, 3 - c)],
        "cold4": [O(-1, 0), O(-1, 1), W(1, -2), W(1, -1), O(0, c - 4), O(0, c - 3)],
    }
    lists["colt2"] = lists["colt"]
    lists["coltd2"] = lists["coltd"]
    if name not in lists:
        raise DomainError(f"unknown collection {name!r}")
    return tuple(lists[name])


# --- rewrites ------------------------------------------------------------------


def _shift_desc(desc: SheafDescriptor, D: DivisorClass) -> SheafDescriptor:
    if isinstance(desc, LineBundle):
        return LineBundle(desc.D + D)
    if isinstance(desc, OmegaTwist):
        return OmegaTwist(desc.D + D)
    if isinstance(desc, OmegaDualTwist):
        return OmegaDualTwist(desc.D + D)
    raise UnsupportedDescriptor(str(desc))


def tensor_collection(objs: tuple, D: DivisorClass) -> tuple:
    return tuple(replace(o, descriptor=_shift_desc(o.descriptor, D)) for o in objs)


def mutate_pair(objs: tuple, i: int, step: int) -> tuple:
    """Move the adjacent pair (X(D), X(D+F)) at positions i, i+1 to (X(D+sF), X(D+(s+1)F)).

    step > 0 is a sequence of right mutations, step < 0 of left mutations.
    """
    if not 0 <= i < len(objs) - 1:
        raise DomainError(f"no adjacent pair at position {i} in a list of length {len(objs)}")
    x, y = objs[i], objs[i + 1]
    if type(x.descriptor) is not type(y.descriptor) or x.shift != y.shift:
        raise DomainError(f"positions {i},{i + 1} do not form a mutable pair")
    if y.descriptor.D - x.descriptor.D != DivisorClass(0, 1):
        raise DomainError(f"positions {i},{i + 1} are not of the form X(D), X(D+F)")
    out = list(objs)
    shift = DivisorClass(0, step)
    out[i] = replace(x, descriptor=_shift_desc(x.descriptor, shift))
    out[i + 1] = replace(y, descriptor=_shift_desc(y.descriptor, shift))
    return tuple(out)


def _chain(S: Scroll, name: str, t: int) -> tuple:
    """(base name, list of rewrites); a rewrite is ('tensor', b) or ('mutate', pos, step)."""
    c = S.c
    chains = {
        "col": ("col", []),
        "cold": ("cold", []),
        "col0": ("col", [("tensor", c - 3)]),
        "col00": ("col", [("tensor", c - 3), ("mutate", 0, 1)]),
        "cold0": ("cold", [("tensor", 3 - c), ("mutate", 0, -1)]),
        "colt": ("col", [("mutate", 0, 1), ("mutate", 4, t)]),
        "coltd": ("cold", [("mutate", 0, -1), ("mutate", 4, -t)]),
        "colt2": ("col", [("mutate", 0, 1), ("mutate", 4, t)]),
        "coltd2": ("cold", [("mutate", 0, -1), ("mutate", 4, -t)]),
        "col*": ("col", [("mutate", 0, 1), ("mutate", 4, t), ("tensor", c - 3)]),
        "cold*": ("cold", [("mutate", 0, -1), ("mutate", 4, -t), ("tensor", 3 - c)]),
        "col3": ("col", [("mutate", 0, c - 2)]),
        "cold3": ("cold", [("mutate", 0, 2 - c)]),
        "col4": ("col", [("mutate", 0, c - 2), ("mutate", 4, 3 - c)]),
        "cold4": ("cold", [("mutate", 0, 2 - c), ("mutate", 4, c - 3)]),
    }
    if name not in chains:
        raise DomainError(f"unknown collection {name!r}; choose from {', '.join(NAMES)}")
    return chains[name]


def _describe(step: tuple) -> str:
    if step[0] == "tensor":
        return f"tensor by O({DivisorClass(0, step[1])})"
    _, pos, k = step
    kind = "right" if k >= 0 else "left"
    return f"{abs(k)} {kind} mutation(s) of pair ({pos},{pos + 1})"


@lru_cache(maxsize=1024)
def build_collection(S: Scroll, name: str, t: int | None = None) -> Collection:
    if name in T_INDEXED:
        if t is None:
            t = 0
        if t < 0:
            raise DomainError("t must be nonnegative")
    elif t not in (None, 0):
        raise DomainError(f"{name} takes no parameter t")
    tt = t or 0
    base, steps = _chain(S, name, tt)
    objs = verbatim(S, base)
    for step in steps:
        if step[0] == "tensor":
            objs = tensor_collection(objs, DivisorClass(0, step[1]))
        else:
            objs = mutate_pair(objs, step[1], step[2])
    if objs != verbatim(S, name, tt):
        raise InternalInconsistency(f"rewrite chain for {name} does not reproduce its list")
    return Collection(name, objs, t if name in T_INDEXED else None,
                      (f"start from {base}",) + tuple(_describe(s) for s in steps))


# --- Ext calculus ----------------------------------------------------------------


def _omega_dual_shift(S: Scroll) -> DivisorClass:
    # Omega^dual = Omega(3H - cF)
    return DivisorClass(3, -S.c)


def tensor_descriptors(S: Scroll, x: SheafDescriptor, y: SheafDescriptor) -> SheafDescriptor:
    """x tensor y for x, y among O(D), Omega(D), Omega^dual(D)."""
    if isinstance(x, LineBundle):
        return _shift_desc(y, x.D) if not isinstance(y, EndOmegaTwist) else EndOmegaTwist(y.D + x.D)
    if isinstance(y, LineBundle):
        return tensor_descriptors(S, y, x)
    w = _omega_dual_shift(S)
    kinds = (type(x), type(y))
    D = x.D + y.D
    if kinds in ((OmegaTwist, OmegaDualTwist), (OmegaDualTwist, OmegaTwist)):
        return EndOmegaTwist(D)
    if kinds == (OmegaTwist, OmegaTwist):
        return EndOmegaTwist(D - w)
    if kinds == (OmegaDualTwist, OmegaDualTwist):
        return EndOmegaTwist(D + w)
    raise UnsupportedDescriptor(f"cannot tensor {x} with {y}")


def dual_descriptor(S: Scroll, x: SheafDescriptor) -> SheafDescriptor:
    if isinstance(x, LineBundle):
        return LineBundle(-x.D)
    if isinstance(x, OmegaTwist):
        return OmegaDualTwist(-x.D)
    if isinstance(x, OmegaDualTwist):
        return OmegaTwist(-x.D)
    raise UnsupportedDescriptor(f"cannot dualize {x}")


def sheaf_ext(S: Scroll, x: SheafDescriptor, y: SheafDescriptor) -> CohTable:
    """Ext^k(x, y) = H^k(x^dual tensor y) for locally free x."""
    return sheaf_cohomology(S, tensor_descriptors(S, dual_descriptor(S, x), y))


def ext_between(S: Scroll, x: CollectionObject, y: CollectionObject) -> dict:
    """Ext^k(x, y) for shifted objects, as {k: CohValue} over the degrees where it can be nonzero."""
    table = sheaf_ext(S, x.descriptor, y.descriptor)
    offset = y.shift - x.shift  # Ext^k(A[m], B[n]) = Ext^{k+n-m}(A, B)
    return {j - offset: table[j] for j in range(4)}


# --- checks ----------------------------------------------------------------------


@dataclass(frozen=True)
class CellResult:
    i: int
    j: int
    degree: int
    value: CohValue
    expected: int | None
    status: str  # pass | fail | unresolved


@dataclass(frozen=True)
class CheckReport:
    kind: str
    passed: bool
    cells: tuple
    notes: tuple = ()

    @property
    def failures(self) -> tuple:
        return tuple(c for c in self.cells if c.status == "fail")

    @property
    def unresolved(self) -> tuple:
        return tuple(c for c in self.cells if c.status == "unresolved")


def _status(v: CohValue, expected: int) -> str:
    if v.is_exact:
        return "pass" if v.lo == expected else "fail"
    return "unresolved" if v.contains(expected) else "fail"


def check_strong(S: Scroll, C: Collection) -> CheckReport:
    """Ext^k(obj_i, obj_j) = 0 for i < j and k > 0, comparing the underlying sheaves."""
    cells = []
    for i in range(len(C)):
        for j in range(i + 1, len(C)):
            table = sheaf_ext(S, C.objects[i].descriptor, C.objects[j].descriptor)
            for k in (1, 2, 3):
                cells.append(CellResult(i, j, k, table[k], 0, _status(table[k], 0)))
    ok = all(c.status == "pass" for c in cells)
    return CheckReport("strong", ok, tuple(cells), ("shifts dropped: Ext between the underlying sheaves",))


def check_exceptional(S: Scroll, C: Collection) -> CheckReport:
    """Each object is exceptional and Ext^*(obj_j, obj_i) = 0 for i < j."""
    cells = []
    for i, x in enumerate(C.objects):
        table = sheaf_ext(S, x.descriptor, x.descriptor)
        for k in range(4):
            exp = 1 if k == 0 else 0
            cells.append(CellResult(i, i, k, table[k], exp, _status(table[k], exp)))
    for i in range(len(C)):
        for j in range(i + 1, len(C)):
            table = sheaf_ext(S, C.objects[j].descriptor, C.objects[i].descriptor)
            for k in range(4):
                cells.append(CellResult(j, i, k, table[k], 0, _status(table[k], 0)))
    ok = all(c.status == "pass" for c in cells)
    return CheckReport("exceptional", ok, tuple(cells))


def check_dual_pairing(S: Scroll, E: Collection, F: Collection) -> CheckReport:
    """H^{k+k_i}(E_i tensor F_j) is one-dimensional exactly when i = j = k, zero otherwise.

    Objects are indexed from the right end (the last object has index 0) and
    k_i is the shift carried by E_i.
    """
    if len(E) != 6 or len(F) != 6:
        raise DomainError("dual pairing needs two collections of length 6")
    cells = []
    for p, e in enumerate(E.objects):
        i = 5 - p
        for q, f in enumerate(F.objects):
            j = 5 - q
            table = sheaf_cohomology(S, tensor_descriptors(S, e.descriptor, f.descriptor))
            for m in range(4):
                k = m - e.shift
                exp = 1 if (i == j and k == i) else 0
                cells.append(CellResult(i, j, k, table[m], exp, _status(table[m], exp)))
    ok = all(c.status == "pass" for c in cells)
    return CheckReport("dual", ok, tuple(cells))
