"""Coordinate-sign involutions and the genus-1 quotients they produce."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .arith import BinaryForm, rat, rat_sqrt
from .errors import NotSmooth, PointNotOnD, QuotientNotGenus1, WrongDegree
from .models import CurvePoint, Genus1Quartic, HyperellipticG3, PlaneQuartic, validate_genus1

Matrix = tuple[tuple[Fraction, ...], ...]

FLIP_ORDER = ("FlipY", "FlipX", "FlipZ")
_FLIP_INDEX = {"FlipX": 0, "FlipY": 1, "FlipZ": 2}


# -- 3x3 matrices ------------------------------------------------------------

def as_matrix(rows) -> Matrix:
    M = tuple(tuple(rat(v) for v in row) for row in rows)
    if len(M) != 3 or any(len(r) != 3 for r in M):
        raise ValueError("expected a 3x3 matrix")
    return M


def identity() -> Matrix:
    return as_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def matmul(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def matvec(A: Matrix, v):
    return tuple(sum(A[i][k] * v[k] for k in range(3)) for i in range(3))


def det3(A: Matrix) -> Fraction:
    return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
            - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
            + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))


def inverse(A: Matrix) -> Matrix:
    d = det3(A)
    if d == 0:
        raise ValueError("singular matrix")
    cof = [[(A[(j + 1) % 3][(i + 1) % 3] * A[(j + 2) % 3][(i + 2) % 3]
             - A[(j + 1) % 3][(i + 2) % 3] * A[(j + 2) % 3][(i + 1) % 3]) for j in range(3)]
           for i in range(3)]
    return tuple(tuple(c / d for c in row) for row in cof)


def flip_matrix(kind: str) -> Matrix:
    k = _FLIP_INDEX[kind]
    return as_matrix([[(-1 if i == k else 1) if i == j else 0 for j in range(3)] for i in range(3)])


def _swap_to_y(kind: str) -> Matrix:
    """Permutation S with S^-1 Flip S = FlipY (it swaps Y with the flipped coordinate)."""
    k = _FLIP_INDEX[kind]
    perm = [0, 1, 2]
    perm[1], perm[k] = perm[k], perm[1]
    return as_matrix([[1 if perm[i] == j else 0 for j in range(3)] for i in range(3)])


def signed_permutations() -> list[Matrix]:
    """The 48 signed permutation matrices; identity first."""
    out = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            out.append(as_matrix([[signs[i] if perm[i] == j else 0 for j in range(3)] for i in range(3)]))
    return out


def projectively_equal(A: Matrix, B: Matrix) -> bool:
    ratio = None
    for i in range(3):
        for j in range(3):
            a, b = A[i][j], B[i][j]
            if (a == 0) != (b == 0):
                return False
            if a:
                if ratio is None:
                    ratio = a / b
                elif a / b != ratio:
                    return False
    return True


# -- involutions ---------------------------------------------------------------

@dataclass(frozen=True)
class Involution:
    """sigma: v -> matrix . v on C.  ``conjugator`` M satisfies sigma = M FlipY M^-1 (quartics)."""

    kind: str
    matrix: Matrix
    conjugator: Matrix
    curve_type: str = "quartic"

    def apply(self, P: CurvePoint) -> CurvePoint:
        if self.curve_type == "hyperelliptic":
            return CurvePoint(-P.x, P.y, P.z, P.weight)
        return CurvePoint(*matvec(self.matrix, P.coords), 1)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "matrix": [[str(c) for c in row] for row in self.matrix],
            "conjugator": [[str(c) for c in row] for row in self.conjugator],
        }


def detect_involutions(C, extra_transforms: Sequence = ()) -> list[Involution]:
    """Involutions of C of the form T Flip T^-1, T a signed permutation (or a supplied matrix)."""
    if isinstance(C, HyperellipticG3):
        even = all(c == 0 for i, c in enumerate(C.F.coeffs) if i % 2)
        if not even:
            return []
        flip = flip_matrix("FlipX")
        return [Involution("FlipX", flip, identity(), "hyperelliptic")]
    if not isinstance(C, PlaneQuartic):
        raise TypeError(f"unsupported curve type {type(C).__name__}")
    Q = C.form
    found: list[Involution] = []
    transforms = signed_permutations() + [as_matrix(T) for T in extra_transforms]
    for T in transforms:
        QT = Q.substitute(T)
        Tinv = inverse(T)
        for kind in FLIP_ORDER:
            if not QT.is_even_in(_FLIP_INDEX[kind]):
                continue
            sigma = matmul(matmul(T, flip_matrix(kind)), Tinv)
            if any(projectively_equal(sigma, inv.matrix) for inv in found):
                continue
            if projectively_equal(sigma, identity()):
                continue
            found.append(Involution(_classify(sigma), sigma, matmul(T, _swap_to_y(kind))))
    return found


def _classify(sigma: Matrix) -> str:
    """Name a diagonal sign flip; any other involution is reported as conjugated."""
    if any(sigma[i][j] for i in range(3) for j in range(3) if i != j):
        return "Conjugated"
    diag = [sigma[i][i] for i in range(3)]
    for kind, k in _FLIP_INDEX.items():
        others = [diag[i] for i in range(3) if i != k]
        if others[0] == others[1] == -diag[k]:
            return kind
    return "Conjugated"


def is_ciani(C: PlaneQuartic) -> tuple[bool, tuple[Fraction, ...] | None]:
    """(True, (a1, a2, a3, b1, b2, b3)) when only even exponents occur."""
    if not all(e % 2 == 0 for m, _ in C.form.terms for e in m):
        return False, None
    c = C.form.coeff
    params = (c((4, 0, 0)), c((0, 4, 0)), c((0, 0, 4)),
              c((0, 2, 2)) / 2, c((2, 0, 2)) / 2, c((2, 2, 0)) / 2)
    return True, params


# -- quotients -------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientData:
    """D = C / <sigma> with the quotient map psi and its fiberwise inverse."""

    C: object
    involution: Involution
    D: Genus1Quartic
    kind: str  # "quartic" | "hyperelliptic"
    h: BinaryForm | None = None
    r: BinaryForm | None = None
    provenance: dict = field(default_factory=dict)

    def psi_coords(self, v, K: Callable = lambda c: c):
        """Quotient map on coordinates (any field, constants embedded by ``K``)."""
        if self.kind == "hyperelliptic":
            x, y, z = v
            return (x * x, y, z * z)
        Minv = inverse(self.involution.conjugator)
        Xp, Yp, Zp = (sum(K(Minv[i][k]) * v[k] for k in range(3)) for i in range(3))
        h = [K(c) for c in self.h.coeffs]
        hv = sum(c * Xp ** i * Zp ** (2 - i) for i, c in enumerate(h))
        return (Xp, 2 * Yp * Yp - hv, Zp)

    def psi(self, P: CurvePoint) -> CurvePoint:
        return self.D.point(*self.psi_coords(P.coords))

    def fiber(self, P: CurvePoint) -> list[CurvePoint]:
        """Rational points of C over the D-point P, verified on C."""
        if not self.D.contains(*P.coords):
            raise PointNotOnD(f"{P} is not on the quotient")
        out = set()
        if self.kind == "hyperelliptic":
            if P.z == 0:
                candidates = [(Fraction(1), P.y, Fraction(0))]
            else:
                s = rat_sqrt(P.x)
                candidates = [] if s is None else [(t, P.y, Fraction(1)) for t in {s, -s}]
            for c in candidates:
                if self.C.contains(*c):
                    out.add(CurvePoint(*c, self.C.weight))
        else:
            X0, W0, Z0 = P.coords
            val = (W0 + self.h(X0, Z0)) / 2
            s = rat_sqrt(val)
            if s is not None:
                M = self.involution.conjugator
                for t in {s, -s}:
                    v = matvec(M, (X0, t, Z0))
                    if self.C.contains(*v):
                        out.add(CurvePoint(*v, 1))
        return sorted(out)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "involution": self.involution.to_json(),
            "D": self.D.to_json(),
            "provenance": self.provenance,
        }
        if self.kind == "quartic":
            out["h"] = self.h.to_json()
            out["r"] = self.r.to_json()
            out["psi"] = "(X' : 2*Y'^2 - h(X', Z') : Z') with (X', Y', Z') = M^-1 (X, Y, Z)"
            out["back_maps"] = "(X0 : W0 : Z0) -> M (X0 : +-sqrt((W0 + h(X0, Z0))/2) : Z0)"
        else:
            out["psi"] = "(x : y : z) -> (x^2 : y : z^2)"
            out["back_maps"] = "(u : v : 1) -> (+-sqrt(u) : v : 1); (1 : v : 0) -> (1 : v : 0)"
        return out


def build_quotient(C, sigma: Involution) -> QuotientData:
    if isinstance(C, HyperellipticG3):
        F = C.F
        G = BinaryForm(4, [F.coeffs[2 * i] for i in range(5)])
        D = _genus1_or_raise(G)
        return QuotientData(C, sigma, D, "hyperelliptic",
                            provenance={"involution": sigma.kind, "substitution": "u = x^2, w = z^2"})
    M = sigma.conjugator
    Qp = C.form.substitute(M)
    if not Qp.is_even_in(1):
        raise QuotientNotGenus1("the conjugated form is not even in Y")
    a = Qp.coeff((0, 4, 0))
    if a == 0:
        raise QuotientNotGenus1("no Y^4 term: the quotient is not a genus-1 double cover of this shape")
    c2 = Qp.slice_in(1, 2)
    c0 = Qp.slice_in(1, 0)
    h = c2 * (-1 / a)
    r = c0 * (1 / a)
    G = h * h - r * 4
    D = _genus1_or_raise(G)
    return QuotientData(C, sigma, D, "quartic", h=h, r=r,
                        provenance={"involution": sigma.kind,
                                    "conjugator": [[str(c) for c in row] for row in M],
                                    "substitution": "W = 2*Y^2 - h(X, Z)",
                                    "normalization": f"divided by the Y^4 coefficient {a}"})


def _genus1_or_raise(G: BinaryForm) -> Genus1Quartic:
    try:
        return validate_genus1(G)
    except (WrongDegree, NotSmooth) as exc:
        raise QuotientNotGenus1(f"quotient y^2 = {G} is not genus 1: {exc}") from exc
