"""Frobenius 모델과 궤도 계산, 분류 전 후보 필터.

네 가지 모델을 다룹니다:
- StdP2: P² 위 표준 Frobenius [x:y:z] ↦ [x²:y²:z²]
- QTwist: Q 모델을 P¹×P¹로 옮긴 twisted Frobenius (인수 교환 + 제곱)
- D5Twist: 차수 5 del Pezzo 모델의 P² 위 twisted Frobenius
- D6Twist: 차수 6 del Pezzo 모델의 P² 위 twisted Frobenius

모든 모델은 GF(2) 계수 MPoly 성분으로 저장되므로, 같은 성분으로
기호적 항등식 검사와 점별 적용을 모두 수행합니다.
"""

import logging
from enum import Enum
from functools import lru_cache
from typing import NamedTuple, Sequence

import galois
import numpy as np

from cremona_f2.errors import IndeterminatePoint, PeriodOverflow, UnsupportedSize, ZeroInverse, ZeroVector
from cremona_f2.ff import FieldCtx, conjugates, gf2, registry_field, roots_of_unity
from cremona_f2.geom import ProjPoint, normalize_ints
from cremona_f2.poly import MPoly

logger = logging.getLogger(__name__)

# ===== 설정 =====

# 궤도 길이 상한 (최대 체 차수 30의 두 배)
ORBIT_CAP = 60

# (surface, d)별 후보가 사는 체 (registry key)
CANDIDATE_FIELDS: dict[tuple[str, int], str] = {
    ("P2", 3): "F8",
    ("P2", 6): "F64",
    ("P2", 7): "F128",
    ("P2", 8): "F256",
    ("Q", 4): "F16",
    ("Q", 6): "F64",
    ("Q", 7): "F2_14",
    ("D5", 3): "F2_15",
    ("D5", 4): "F2_20",
    ("D6", 2): "F64",
    ("D6", 3): "F64",
    ("D6", 4): "F2_12",
    ("D6", 5): "F2_30",
}

# 짝수 d의 P² 후보에서 λ = a^k (x³+x+1 또는 x⁴+x+1의 근)
P2_EVEN_LAMBDA_EXPONENT: dict[int, int] = {6: 9, 8: 17}

# ===== 모델 =====

class FrobTag(str, Enum):
    """Frobenius 모델 tag."""

    StdP2 = "StdP2"
    QTwist = "QTwist"
    D5Twist = "D5Twist"
    D6Twist = "D6Twist"


MODEL_SPACE: dict[FrobTag, str] = {
    FrobTag.StdP2: "P2",
    FrobTag.QTwist: "P1xP1",
    FrobTag.D5Twist: "P2",
    FrobTag.D6Twist: "P2",
}

# 분류 대상 surface와 모델의 대응
SURFACE_MODEL: dict[str, FrobTag] = {
    "P2": FrobTag.StdP2,
    "Q": FrobTag.QTwist,
    "D5": FrobTag.D5Twist,
    "D6": FrobTag.D6Twist,
}


def _model_components(tag: FrobTag) -> tuple[MPoly, ...]:
    k = gf2()
    if tag == FrobTag.QTwist:
        x0, x1, y0, y1 = MPoly.gens(k, 4)
        return (y0.square(), y1.square(), x0.square(), x1.square())
    x, y, z = MPoly.gens(k, 3)
    x2, y2, z2 = x.square(), y.square(), z.square()
    if tag == FrobTag.StdP2:
        return (x2, y2, z2)
    if tag == FrobTag.D5Twist:
        return (x2 * y2, y2 * (x2 + z2), x2 * (y2 + z2))
    if tag == FrobTag.D6Twist:
        return (x2 * z2, x2 * y2, y2 * z2)
    raise ValueError(f"unknown model {tag!r}")


class FrobModel:
    """Frobenius 모델. 성분은 GF(2) 계수 MPoly입니다."""

    def __init__(self, tag: FrobTag):
        self.tag = FrobTag(tag)
        self.space = MODEL_SPACE[self.tag]
        self.components = _model_components(self.tag)
        self._per_field: dict[FieldCtx, tuple[MPoly, ...]] = {}

    def components_over(self, ctx: FieldCtx) -> tuple[MPoly, ...]:
        comps = self._per_field.get(ctx)
        if comps is None:
            comps = tuple(c.over(ctx) for c in self.components)
            self._per_field[ctx] = comps
        return comps

    def __repr__(self) -> str:
        return f"FrobModel({self.tag.value})"


@lru_cache(maxsize=None)
def frob_model(tag: FrobTag | str) -> FrobModel:
    """Tag별 모델 singleton."""
    return FrobModel(FrobTag(tag))


class GOrbit(NamedTuple):
    """Galois 궤도. points[0]이 대표점이고 apply가 points[i]를 points[i+1]로 보냅니다."""

    model: FrobTag
    points: tuple[ProjPoint, ...]
    size: int

# ===== 적용과 궤도 =====

def apply(model: FrobModel, p: ProjPoint) -> ProjPoint:
    """모델을 점에 적용하고 정규화합니다.

    Raises:
        IndeterminatePoint: 어떤 인수의 성분이 모두 0인 경우
    """
    comps = model.components_over(p.ctx)
    values = [c.eval(p.coords) for c in comps]
    try:
        return normalize_ints(model.space, values, p.ctx)
    except ZeroVector as exc:
        raise IndeterminatePoint(f"{model.tag.value} is not defined at {p.text()}") from exc


def orbit(model: FrobModel, p: ProjPoint, cap: int = ORBIT_CAP) -> GOrbit:
    """p로 돌아올 때까지 apply를 반복합니다.

    Raises:
        PeriodOverflow: cap번 안에 돌아오지 않는 경우
    """
    points = [p]
    q = apply(model, p)
    while q != p:
        if len(points) >= cap:
            raise PeriodOverflow(f"orbit of {p.text()} under {model.tag.value} exceeds {cap}")
        points.append(q)
        q = apply(model, q)
    return GOrbit(model.tag, tuple(points), len(points))


def orbit_size(model: FrobModel, p: ProjPoint, cap: int = ORBIT_CAP) -> int:
    """궤도 크기. 불확정점이면 0을 반환합니다."""
    try:
        return orbit(model, p, cap).size
    except IndeterminatePoint:
        return 0


def twist_iterate(model: FrobModel, k: int) -> tuple[MPoly, ...]:
    """모델의 k번 합성을 기호적으로 계산합니다 (약분 없음)."""
    comps = model.components
    result = comps
    for _ in range(k - 1):
        result = tuple(c.compose(result) for c in comps)
    return result

# ===== 후보 =====

def candidate_field(surface: str, d: int) -> FieldCtx:
    """(surface, d) 후보가 사는 체."""
    key = CANDIDATE_FIELDS.get((surface, d))
    if key is None:
        raise UnsupportedSize(f"no candidates for {surface} with d={d}")
    return registry_field(key)


def frobenius_representatives(ctx: FieldCtx) -> list[int]:
    """각 Frobenius 궤도에서 가장 작은 원소 (0과 1 포함)."""
    return [y for y in range(ctx.order) if y == min(conjugates(ctx, y))]


def labelled_candidates_p2(d: int) -> list[tuple[str, ProjPoint]]:
    """P² 후보와 그 형태 label."""
    ctx = candidate_field("P2", d)
    out: list[tuple[str, ProjPoint]] = []
    if d % 2 == 0:
        lam = ctx.power_of_x(P2_EVEN_LAMBDA_EXPONENT[d])
        lam2 = ctx.square(lam)
        for y in range(ctx.order):
            out.append(("[1:y:λ]", ProjPoint("P2", (1, y, lam), ctx)))
        for y in range(ctx.order):
            out.append(("[1:y:λ²+λy]", ProjPoint("P2", (1, y, lam2 ^ ctx.mul(lam, y)), ctx)))
        return out
    for y in frobenius_representatives(ctx):
        for z in range(ctx.order):
            out.append(("[1:y:z]", ProjPoint("P2", (1, y, z), ctx)))
    return out


def candidates_p2(d: int) -> list[ProjPoint]:
    """짝수 d는 두 형태 [1:y:λ], [1:y:λ²+λy]; 홀수 d는 y가 Frobenius 대표인 [1:y:z]."""
    if d not in (3, 6, 7, 8):
        raise UnsupportedSize(f"P2 candidates exist for d in 3,6,7,8, not {d}")
    return [p for _, p in labelled_candidates_p2(d)]


def labelled_candidates_q(d: int) -> list[tuple[str, ProjPoint]]:
    ctx = candidate_field("Q", d)
    out: list[tuple[str, ProjPoint]] = []
    if d % 2 == 0:
        for x in range(1, ctx.order):
            for y in range(1, ctx.order):
                out.append(("([x:1],[y:1])", normalize_ints("P1xP1", (x, 1, y, 1), ctx)))
        return out
    shift = 1 << d
    for x in range(1, ctx.order):
        y = ctx.pow(x, shift)
        out.append(("([x:1],[x^(2^d):1])", normalize_ints("P1xP1", (x, 1, y, 1), ctx)))
    return out


def candidates_q(d: int) -> list[ProjPoint]:
    """짝수 d는 0이 아닌 (x,y) 전체, 홀수 d는 (x, x^(2^d)) over F_{2^{2d}}."""
    if d not in (4, 6, 7):
        raise UnsupportedSize(f"Q candidates exist for d in 4,6,7, not {d}")
    return [p for _, p in labelled_candidates_q(d)]


def _galois_field(ctx: FieldCtx):
    return galois.GF(ctx.order, irreducible_poly=ctx.modulus)


def _solutions(ctx: FieldCtx, exponents: Sequence[int], rhs: int) -> list[int]:
    """Σ x^e = rhs의 해 전체를 체 전체에 대해 vectorized로 찾습니다."""
    field = _galois_field(ctx)
    x = field.elements
    acc = field.Zeros(ctx.order)
    for e in exponents:
        acc = acc + x**e
    return np.flatnonzero(acc == field(rhs)).tolist()


def labelled_candidates_d5(d: int) -> list[tuple[str, ProjPoint]]:
    ctx = candidate_field("D5", d)
    out: list[tuple[str, ProjPoint]] = []
    if d == 3:
        for b in _solutions(ctx, (73, 72, 64, 57, 9, 8, 1), 1):
            if b in (0, 1):
                # b = 1이면 [1:1:1], D₅의 경계점이므로 크기 3 궤도가 될 수 없습니다.
                logger.debug("dropping D5 candidate b=%s from the prime field", ctx.text(b))
                continue
            denom = ctx.pow(b, 8) ^ ctx.pow(b, 7) ^ 1
            try:
                lam = ctx.inv(denom)
            except ZeroInverse:
                logger.warning("skipping degenerate D5 candidate b=%s (b^8+b^7+1 = 0)", ctx.text(b))
                continue
            out.append(("[1:(b⁸+b⁷+1)⁻¹:b]", ProjPoint("P2", (1, lam, b), ctx)))
        return out
    for a in _solutions(ctx, (257, 16), 1):
        out.append(("[1:a:1+a¹⁶]", ProjPoint("P2", (1, a, 1 ^ ctx.pow(a, 16)), ctx)))
    return out


def candidates_d5(d: int) -> list[ProjPoint]:
    """d=3: b⁷³+b⁷²+b⁶⁴+b⁵⁷+b⁹+b⁸+b = 1인 [1:(b⁸+b⁷+1)⁻¹:b]; d=4: a²⁵⁷+a¹⁶ = 1인 [1:a:1+a¹⁶]."""
    if d not in (3, 4):
        raise UnsupportedSize(f"D5 candidates exist for d in 3,4, not {d}")
    return [p for _, p in labelled_candidates_d5(d)]


def labelled_candidates_d6(d: int) -> list[tuple[str, ProjPoint]]:
    ctx = candidate_field("D6", d)
    out: list[tuple[str, ProjPoint]] = []
    if d == 2:
        for b in roots_of_unity(ctx, 21):
            out.append(("[b⁻⁴:b:1]", normalize_ints("P2", (ctx.pow(b.value, -4), b.value, 1), ctx)))
    elif d == 3:
        roots = roots_of_unity(ctx, 9)
        for a in roots:
            for b in roots:
                out.append(("[a:b:1]", normalize_ints("P2", (a.value, b.value, 1), ctx)))
    elif d == 4:
        for a in roots_of_unity(ctx, 273):
            out.append(("[a:a⁻¹⁶:1]", normalize_ints("P2", (a.value, ctx.pow(a.value, -16), 1), ctx)))
    else:
        for b in roots_of_unity(ctx, 993):
            out.append(("[b³²:b:1]", normalize_ints("P2", (ctx.pow(b.value, 32), b.value, 1), ctx)))
    return out


def candidates_d6(d: int) -> list[ProjPoint]:
    """d=2: b²¹=1의 [b⁻⁴:b:1]; d=3: a⁹=b⁹=1의 [a:b:1]; d=4: a²⁷³=1의 [a:a⁻¹⁶:1]; d=5: b⁹⁹³=1의 [b³²:b:1]."""
    if d not in (2, 3, 4, 5):
        raise UnsupportedSize(f"D6 candidates exist for d in 2,3,4,5, not {d}")
    return [p for _, p in labelled_candidates_d6(d)]


def labelled_candidates(surface: str, d: int) -> list[tuple[str, ProjPoint]]:
    """Surface별 후보 생성기 dispatch."""
    if (surface, d) not in CANDIDATE_FIELDS:
        raise UnsupportedSize(f"no candidates for {surface} with d={d}")
    if surface == "P2":
        return labelled_candidates_p2(d)
    if surface == "Q":
        return labelled_candidates_q(d)
    if surface == "D5":
        return labelled_candidates_d5(d)
    return labelled_candidates_d6(d)
