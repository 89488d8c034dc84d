"""2-truncated simplicial sets and their computads."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..computad import EMPTY, Computad, Sphere, Var, ty
from ..errors import SimplicialIdentityViolation
from ..opalg import comp_cells, id_cell


@dataclass
class SimplicialSet2:
    """Faces are listed as (d0, d1) on X1 and (d0, d1, d2) on X2.

    s0 sends vertices to their degenerate edges; s0_2 and s1_2 send edges to
    degenerate triangles.  Degenerate simplices are the images of these maps.
    """
    X0: list
    X1: dict
    X2: dict
    s0: dict = field(default_factory=dict)
    s0_2: dict = field(default_factory=dict)
    s1_2: dict = field(default_factory=dict)

    def degenerate_edges(self) -> set:
        return set(self.s0.values())

    def degenerate_triangles(self) -> set:
        return set(self.s0_2.values()) | set(self.s1_2.values())

    def check(self):
        bad = SimplicialIdentityViolation
        v = set(self.X0)
        for e, faces in self.X1.items():
            if len(faces) != 2 or any(f not in v for f in faces):
                raise bad(f"edge {e} has faces outside X0")
        for x, faces in self.X2.items():
            if len(faces) != 3 or any(f not in self.X1 for f in faces):
                raise bad(f"triangle {x} has faces outside X1")
            d0, d1, d2 = (self.X1[f] for f in faces)
            # d_i d_j = d_{j-1} d_i for i < j
            if d1[0] != d0[0] or d2[0] != d0[1] or d2[1] != d1[1]:
                raise bad(f"faces of triangle {x} do not meet")
        for a, e in self.s0.items():
            if a not in v or e not in self.X1 or self.X1[e] != (a, a):
                raise bad(f"s0({a}) = {e} is not a loop at {a}")
        for e, x in self.s0_2.items():
            d0, d1, d2 = self.X2[x]
            if d0 != e or d1 != e or d2 != self.s0.get(self.X1[e][1]):
                raise bad(f"s0({e}) = {x} breaks the degeneracy identities")
        for e, x in self.s1_2.items():
            d0, d1, d2 = self.X2[x]
            if d1 != e or d2 != e or d0 != self.s0.get(self.X1[e][0]):
                raise bad(f"s1({e}) = {x} breaks the degeneracy identities")

    @staticmethod
    def from_json(d: dict) -> "SimplicialSet2":
        return SimplicialSet2(list(d["X0"]),
                              {k: tuple(v) for k, v in d.get("X1", {}).items()},
                              {k: tuple(v) for k, v in d.get("X2", {}).items()},
                              dict(d.get("s0", {})), dict(d.get("s0_2", {})), dict(d.get("s1_2", {})))

    def to_json(self) -> dict:
        return {"X0": list(self.X0), "X1": {k: list(v) for k, v in self.X1.items()},
                "X2": {k: list(v) for k, v in self.X2.items()},
                "s0": dict(self.s0), "s0_2": dict(self.s0_2), "s1_2": dict(self.s1_2)}


def ingest_simplicial(s: SimplicialSet2) -> Computad:
    s.check()
    degen_e, degen_t = s.degenerate_edges(), s.degenerate_triangles()
    zero = {v: EMPTY for v in s.X0}
    one = {}
    for e, (d0, d1) in s.X1.items():
        if e not in degen_e:
            one[e] = Sphere(EMPTY, Var(0, d1), Var(0, d0))
    c1 = Computad([zero, one], check=False)

    def psi(e):
        if e in degen_e:
            return id_cell(c1, Var(0, s.X1[e][1]))
        return Var(1, e)

    two = {}
    for x, (d0, d1, d2) in s.X2.items():
        if x in degen_t:
            continue
        a = comp_cells(c1, [psi(d2), psi(d0)])
        b = psi(d1)
        two[x] = Sphere(ty(c1, a), a, b)
    return Computad([zero, one, two] if two else [zero, one] if one else [zero])


def standard_simplex() -> SimplicialSet2:
    """Nondegenerate part of the 2-simplex, with the degenerate edges it needs."""
    return SimplicialSet2(["0", "1", "2"],
                          {"01": ("1", "0"), "12": ("2", "1"), "02": ("2", "0")},
                          {"012": ("12", "02", "01")})
