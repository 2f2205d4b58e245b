"""네 가지 surface 모델의 자기동형군.

- P²: PGL₃(F₂) (168개 3×3 행렬)
- Q: PGL₄(F₂) 중 이차형식 x₀x₃+x₁²+x₁x₂+x₂²를 보존하는 120개, P¹×P¹로 옮겨 사용
- D₅: h = [xy : y(x+z) : x(y+z)]가 생성하는 위수 5의 쌍유리 사상군
- D₆: t_(a,a²)∘pʲ∘ιⁱ 형태의 18개 쌍유리 사상

모든 원소는 점에 작용하는 act(p)를 제공하므로 분류 단계의 중복 제거에서
같은 방식으로 사용됩니다. 쌍유리 사상은 성분을 한 단계씩 평가하므로,
약분하지 않은 고차 합성이 우연히 0이 되는 점 문제를 피합니다.
"""

import logging
from collections import deque
from functools import lru_cache
from itertools import product
from typing import NamedTuple, Protocol, Sequence

from cremona_f2.errors import IndeterminatePoint, ZeroInverse, ZeroVector
from cremona_f2.ff import FieldCtx, embed_with_min_poly, gf2, registry_field
from cremona_f2.geom import ProjPoint, apply_matrix, matmul, matrix_inverse, normalize_ints
from cremona_f2.poly import MPoly
from cremona_f2.rmap import RatMap, compose_all, fibration, identity, linear_map, semi_preserves
from cremona_f2.rmap_builtins import builtin, q_form, q_frame_matrices

logger = logging.getLogger(__name__)

# ===== 설정 =====

# 선언된 군의 위수
GROUP_ORDERS: dict[str, int] = {"P2": 168, "Q": 120, "D5": 5, "D6": 18}

# PGL₃(F₂)의 두 생성원: 단위 상삼각 A와 순환 치환 B
GENERATOR_A: tuple[tuple[int, ...], ...] = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
GENERATOR_B: tuple[tuple[int, ...], ...] = ((0, 0, 1), (1, 0, 0), (0, 1, 0))

# A, B로 표현되는 두 원소
RELATION_B2: tuple[tuple[int, ...], ...] = ((1, 0, 0), (0, 0, 1), (0, 1, 0))
RELATION_B3: tuple[tuple[int, ...], ...] = ((1, 0, 0), (0, 0, 1), (0, 1, 1))

# α₄ = [x:z:x+y]
ALPHA4: tuple[tuple[int, ...], ...] = ((1, 0, 0), (0, 0, 1), (1, 1, 0))

Matrix = tuple[tuple[int, ...], ...]

# ===== 점 작용 =====

class PointAction(Protocol):
    """점에 작용하는 자기동형."""

    def act(self, p: ProjPoint) -> ProjPoint: ...


class LinearAuto(NamedTuple):
    """사영 선형 변환. 행렬은 열벡터에 작용하고 첫 0이 아닌 성분이 1입니다."""

    dim: int
    entries: Matrix
    ctx: FieldCtx

    def act(self, p: ProjPoint) -> ProjPoint:
        ctx = p.ctx
        values = apply_matrix(ctx, self.entries, p.coords)
        return normalize_ints(p.space, values, ctx)

    def compose(self, other: "LinearAuto") -> "LinearAuto":
        """self∘other."""
        return make_linear(matmul(self.ctx, self.entries, other.entries), self.ctx)

    def inverse(self) -> "LinearAuto":
        return make_linear(matrix_inverse(self.ctx, self.entries), self.ctx)

    def ratmap(self) -> RatMap:
        return linear_map(self.ctx, self.entries)


def canonical_scaling(entries: Sequence[Sequence[int]], ctx: FieldCtx) -> Matrix:
    """첫 번째 0이 아닌 성분을 1로 만드는 스칼라배."""
    lead = next((v for row in entries for v in row if v), 0)
    if lead == 0:
        raise ZeroInverse("zero matrix")
    inv = ctx.inv(lead)
    return tuple(tuple(ctx.mul(v, inv) for v in row) for row in entries)


def make_linear(entries: Sequence[Sequence[int]], ctx: FieldCtx | None = None) -> LinearAuto:
    ctx = ctx or gf2()
    return LinearAuto(len(entries), canonical_scaling(entries, ctx), ctx)


class QAuto(NamedTuple):
    """Q의 자기동형을 P¹×P¹로 옮긴 것. matrix = L·α·L⁻¹은 Segre 좌표에 작용합니다."""

    form_matrix: Matrix
    matrix: Matrix
    ctx: FieldCtx

    def act(self, p: ProjPoint) -> ProjPoint:
        ctx = p.ctx
        a0, a1, b0, b1 = p.coords
        mul = ctx.mul
        segre = [mul(a0, b0), mul(a0, b1), mul(a1, b0), mul(a1, b1)]
        z = apply_matrix(ctx, self.matrix, segre)
        first = (z[0], z[2]) if (z[0] or z[2]) else (z[1], z[3])
        second = (z[0], z[1]) if (z[0] or z[1]) else (z[2], z[3])
        try:
            return normalize_ints("P1xP1", first + second, ctx)
        except ZeroVector as exc:
            raise IndeterminatePoint(f"Q automorphism collapses {p.text()}") from exc


class BirationalAuto(NamedTuple):
    """쌍유리 자기동형. steps를 앞에서부터 차례로 적용합니다."""

    label: str
    steps: tuple[RatMap, ...]

    def act(self, p: ProjPoint) -> ProjPoint:
        for step in self.steps:
            p = step(p)
        return p

    def ratmap(self) -> RatMap:
        """약분하지 않은 합성 (마지막 step이 바깥쪽)."""
        if not self.steps:
            raise ValueError("empty word")
        return compose_all(*reversed(self.steps))


class SurfaceAutoSet(NamedTuple):
    """Surface 모델의 자기동형 전체."""

    surface: str
    elements: tuple[PointAction, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

# ===== GF(2) 행렬 =====

def _bits_to_matrix(bits: int, n: int) -> Matrix:
    return tuple(tuple((bits >> (n * n - 1 - (r * n + c))) & 1 for c in range(n)) for r in range(n))


def _gf2_rank(rows: Sequence[Sequence[int]]) -> int:
    masks = [int("".join(map(str, row)), 2) for row in rows]
    rank = 0
    for bit in reversed(range(len(rows[0]))):
        pivot = next((i for i in range(rank, len(masks)) if masks[i] >> bit & 1), None)
        if pivot is None:
            continue
        masks[rank], masks[pivot] = masks[pivot], masks[rank]
        for i in range(len(masks)):
            if i != rank and masks[i] >> bit & 1:
                masks[i] ^= masks[rank]
        rank += 1
    return rank


def invertible_gf2_matrices(n: int) -> list[Matrix]:
    """n×n 가역 GF(2) 행렬 전체 (bit pattern 오름차순)."""
    out = []
    for bits in range(1 << (n * n)):
        m = _bits_to_matrix(bits, n)
        if _gf2_rank(m) == n:
            out.append(m)
    return out


def mat_mul_gf2(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[r][k] & b[k][c] for k in range(n)) & 1 for c in range(n)) for r in range(n)
    )


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(r == c) for c in range(n)) for r in range(n))

# ===== PGL =====

@lru_cache(maxsize=1)
def pgl3_f2() -> SurfaceAutoSet:
    """PGL₃(F₂) = GL₃(F₂): 가역 3×3 행렬 168개."""
    k = gf2()
    elements = tuple(LinearAuto(3, m, k) for m in invertible_gf2_matrices(3))
    logger.debug("PGL3(F2) has %d elements", len(elements))
    return SurfaceAutoSet("P2", elements)


def closure(generators: Sequence[Sequence[Sequence[int]]]) -> list[Matrix]:
    """GF(2) 행렬 생성원의 곱 폐포 (BFS).

    항등원에서 시작하여 정렬된 생성원을 오른쪽에 곱해 가며 발견 순서대로 나열합니다.
    """
    gens = sorted({tuple(tuple(row) for row in g) for g in generators})
    if not gens:
        return []
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise ValueError("generators must share one dimension")
    start = identity_matrix(n)
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in gens:
            nxt = mat_mul_gf2(current, g)
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return order


def involutions(matrices: Sequence[Matrix]) -> list[Matrix]:
    """g² = 1, g ≠ 1인 원소."""
    if not matrices:
        return []
    one = identity_matrix(len(matrices[0]))
    return [m for m in matrices if m != one and mat_mul_gf2(m, m) == one]


def pgl2_f2() -> list[Matrix]:
    """PGL₂(F₂) = GL₂(F₂): 6개."""
    return invertible_gf2_matrices(2)


def pgl2_involutions() -> list[Matrix]:
    """PGL₂(F₂)의 involution 3개."""
    return involutions(pgl2_f2())


def pgl3_two_generator_relations() -> dict[str, bool]:
    """B₂ = (AB)³B(AB)³, B₃ = (BA)³B(BA)²."""
    a, b = GENERATOR_A, GENERATOR_B

    def word(*factors: Matrix) -> Matrix:
        result = identity_matrix(3)
        for f in factors:
            result = mat_mul_gf2(result, f)
        return result

    ab = mat_mul_gf2(a, b)
    ba = mat_mul_gf2(b, a)
    return {
        "B2": word(ab, ab, ab, b, ab, ab, ab) == RELATION_B2,
        "B3": word(ba, ba, ba, b, ba, ba) == RELATION_B3,
    }


def j4_linear_part() -> list[tuple[Matrix, Matrix]]:
    """PGL₃(F₂) 중 π₄∘g = ι∘π₄ (ι ∈ PGL₂(F₂)) 인 g와 그 ι."""
    pi4 = fibration("pi4")
    out = []
    for g in pgl3_f2().elements:
        f = g.ratmap()
        for iota in pgl2_f2():
            if semi_preserves(f, pi4, iota):
                out.append((g.entries, iota))
                break
    return out


def alpha4_powers() -> list[Matrix]:
    """α₄⁰, α₄, α₄², α₄³."""
    powers = [identity_matrix(3)]
    for _ in range(3):
        powers.append(mat_mul_gf2(powers[-1], ALPHA4))
    return powers

# ===== Q =====

def _form_coefficients(m: Matrix) -> tuple[int, ...]:
    # 이차형식 Q∘M의 계수. xᵢ² 계수는 Q(열ᵢ), xᵢxⱼ 계수는 극형식 B(열ᵢ, 열ⱼ).
    cols = [tuple(m[r][c] for r in range(4)) for c in range(4)]

    def value(v: Sequence[int]) -> int:
        return (v[0] & v[3]) ^ v[1] ^ (v[1] & v[2]) ^ v[2]

    coeffs = [value(c) for c in cols]
    for i in range(4):
        for j in range(i + 1, 4):
            s = tuple(u ^ w for u, w in zip(cols[i], cols[j]))
            coeffs.append(value(s) ^ coeffs[i] ^ coeffs[j])
    return tuple(coeffs)


# x₀x₃+x₁²+x₁x₂+x₂²의 계수 (x₀², x₁², x₂², x₃², x₀x₁, x₀x₂, x₀x₃, x₁x₂, x₁x₃, x₂x₃)
Q_FORM_COEFFICIENTS = (0, 1, 1, 0, 0, 0, 1, 1, 0, 0)


def preserves_q_form(m: Matrix) -> bool:
    """Q∘M = Q를 계수별로 비교합니다."""
    return _form_coefficients(m) == Q_FORM_COEFFICIENTS


@lru_cache(maxsize=1)
def aut_q_matrices() -> tuple[Matrix, ...]:
    """2¹⁶개의 4×4 bit pattern 중 가역이고 Q의 형식을 보존하는 행렬."""
    out = []
    for bits in range(1 << 16):
        m = _bits_to_matrix(bits, 4)
        if preserves_q_form(m) and _gf2_rank(m) == 4:
            out.append(m)
    logger.debug("Aut(Q) has %d elements", len(out))
    return tuple(out)


def aut_q() -> SurfaceAutoSet:
    """Aut(Q) ⊂ PGL₄(F₂): 120개, P³ 위의 선형 사상."""
    k = gf2()
    return SurfaceAutoSet("Q", tuple(LinearAuto(4, m, k) for m in aut_q_matrices()))


def form_preserved_symbolically(m: Matrix) -> bool:
    """MPoly 대입으로 Q∘M = Q를 직접 확인합니다 (빠른 계수 판정의 교차 확인)."""
    form = q_form()
    comps = linear_map(gf2(), m).components
    return form.compose(list(comps)) == form


@lru_cache(maxsize=None)
def aut_q_on_p1xp1(ctx: FieldCtx) -> SurfaceAutoSet:
    """Aut(Q)를 F₄를 포함하는 ctx 위의 P¹×P¹로 옮깁니다 (M_α = L·α·L⁻¹)."""
    forward, backward = q_frame_matrices(ctx)
    elements = []
    for m in aut_q_matrices():
        transported = matmul(ctx, matmul(ctx, forward, m), backward)
        elements.append(QAuto(m, tuple(tuple(r) for r in transported), ctx))
    return SurfaceAutoSet("Q", tuple(elements))

# ===== D₅, D₆ 모델 =====

@lru_cache(maxsize=1)
def aut_d5_model() -> SurfaceAutoSet:
    """{id, h, h², h³, h⁴}."""
    h = builtin("d5_h")
    elements = tuple(BirationalAuto(f"h^{k}", (h,) * k) for k in range(5))
    return SurfaceAutoSet("D5", elements)


def d5_power_ratmap(k: int) -> RatMap:
    """h^k를 약분 없이 합성한 RatMap (k = 0이면 항등사상)."""
    if k == 0:
        return identity("P2")
    return compose_all(*([builtin("d5_h")] * k))


def _toric(ctx: FieldCtx, a: int) -> RatMap:
    x, y, z = MPoly.gens(ctx, 3)
    return RatMap("P2", "P2", [x, y.scale(a), z.scale(ctx.square(a))], f"t_{ctx.text(a)}")


@lru_cache(maxsize=None)
def aut_d6_model(ctx: FieldCtx | None = None) -> SurfaceAutoSet:
    """t_(a,a²)∘pʲ∘ιⁱ, a ∈ F₄*, j ∈ {0,1,2}, i ∈ {0,1} (18개).

    p = [y:z:x], ι = [yz:xz:xy], t_(a,b) = [x:ay:bz]. ctx는 F₄를 포함해야 합니다.
    """
    ctx = ctx or registry_field("F64")
    w = embed_with_min_poly(ctx, [1, 1, 1]).value
    x, y, z = MPoly.gens(ctx, 3)
    cycle = RatMap("P2", "P2", [y, z, x], "p")
    iota = RatMap("P2", "P2", [y * z, x * z, x * y], "iota")
    elements = []
    for a, j, i in product((1, w, ctx.square(w)), range(3), range(2)):
        steps = (iota,) * i + (cycle,) * j + (_toric(ctx, a),)
        label = f"t_{ctx.text(a)}∘p^{j}∘iota^{i}"
        elements.append(BirationalAuto(label, steps))
    return SurfaceAutoSet("D6", tuple(elements))

# ===== 분류용 =====

def automorphisms_for(surface: str, ctx: FieldCtx) -> SurfaceAutoSet:
    """분류 단계에서 점 ctx에 작용하는 자기동형 집합."""
    if surface == "P2":
        return pgl3_f2()
    if surface == "Q":
        return aut_q_on_p1xp1(ctx)
    if surface == "D5":
        return aut_d5_model()
    if surface == "D6":
        return aut_d6_model(ctx)
    raise ValueError(f"unknown surface {surface!r}")


def group_orders() -> dict[str, int]:
    """네 군의 실제 위수."""
    return {
        "P2": pgl3_f2().order,
        "Q": aut_q().order,
        "D5": aut_d5_model().order,
        "D6": aut_d6_model().order,
    }
