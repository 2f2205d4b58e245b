"""이름으로 불러 쓰는 명시적 유리사상 registry와 모델 사이의 사슬 검증.

Registry의 24개 이름은 CLI와 검증 suite가 그대로 사용합니다.
각 사상은 처음 요청될 때 만들어 cache합니다.

이 모듈이 제공하는 검증:
- Q 사슬: chart∘L∘Sq∘L⁻¹∘Segre = QTwist (F₄ 위)
- D₆ 사슬: φ₁₂∘γ∘QTwist∘γ⁻¹∘φ₁₂⁻¹ = D6Twist (F₆₄ 위)
- D₅ 켤레: build_phi_d5()로 만든 φ에 대해 φ∘Sq = D5Twist∘φ
- J₂ 예제의 φ_{[1:0:0]} = A∘σ∘A⁻¹
- Twisted Frobenius 반복의 닫힌 형태
"""

import logging
from functools import lru_cache
from itertools import permutations
from typing import Callable, NamedTuple

from cremona_f2.errors import IndeterminatePoint, MismatchReport, UnknownName, WrongDimension, ZeroInverse
from cremona_f2.ff import FieldCtx, embed_with_min_poly, gf2, make_embedding, registry_field
from cremona_f2.frob import FrobTag, apply, frob_model, orbit, twist_iterate
from cremona_f2.geom import (
    ProjPoint,
    apply_matrix,
    kernel_basis,
    kernel_dimension,
    matrix_inverse,
    monomial_basis,
    normalize_ints,
    position_matrix,
)
from cremona_f2.poly import MPoly, parse_poly
from cremona_f2.rmap import RatMap, compose_all, linear_map, map_compose, maps_equal_rational, space

logger = logging.getLogger(__name__)

# ===== 설정 =====

# build_phi_d5의 점별 검사에 쓰는 점 개수
D5_POINTWISE_SAMPLES = 100

# 점별 검사를 수행하는 체 (F₃₂를 포함해야 함)
D5_POINTWISE_FIELD = "F2_15"

# Twisted Frobenius 반복을 닫힌 형태와 비교하는 최대 횟수
MAX_CLOSED_FORM_ITERATE = 5

# J₂ 예제 사상이 π₂의 밑 P¹에 작용하는 방식 ι[s:t] = [s:s+t]
ONE_LINK22_BASE_ACTION: tuple[tuple[int, int], ...] = ((1, 0), (1, 1))

# ===== 기본 사상 =====

def _poly(text: str, ctx: FieldCtx, space_name: str) -> MPoly:
    return parse_poly(text, ctx, space(space_name).names)


def square_map(space_name: str = "P2", ctx: FieldCtx | None = None) -> RatMap:
    """좌표별 제곱 Sq."""
    spec = space(space_name)
    gens = MPoly.gens(ctx or gf2(), spec.nvars)
    comps = [g.square() for i, g in enumerate(gens) if i != spec.param]
    return RatMap(space_name, space_name, comps, "Sq")


def standard_quadratic(ctx: FieldCtx | None = None) -> RatMap:
    """표준 2차 involution σ: [x:y:z] ↦ [yz:xz:xy]."""
    x, y, z = MPoly.gens(ctx or gf2(), 3)
    return RatMap("P2", "P2", [y * z, x * z, x * y], "sigma")


def alpha2(ctx: FieldCtx | None = None) -> RatMap:
    """α₂ = [x:y:y+z]. π₂를 ι[s:t] = [s:s+t]로 반-보존합니다."""
    return linear_map(ctx or gf2(), [[1, 0, 0], [0, 1, 0], [0, 1, 1]], "alpha2")


def alpha4(ctx: FieldCtx | None = None) -> RatMap:
    """α₄ = [x:z:x+y]. π₄의 두 생성 conic을 맞바꿉니다."""
    return linear_map(ctx or gf2(), [[1, 0, 0], [0, 0, 1], [1, 1, 0]], "alpha4")


def segre(ctx: FieldCtx | None = None) -> RatMap:
    """Segre embedding P¹×P¹ → P³: [x₀y₀ : x₀y₁ : x₁y₀ : x₁y₁]."""
    x0, x1, y0, y1 = MPoly.gens(ctx or gf2(), 4)
    return RatMap("P1xP1", "P3", [x0 * y0, x0 * y1, x1 * y0, x1 * y1], "segre")


def frob_ratmap(tag: FrobTag | str, ctx: FieldCtx | None = None) -> RatMap:
    """Frobenius 모델을 RatMap으로 봅니다."""
    model = frob_model(tag)
    ctx = ctx or gf2()
    return RatMap(model.space, model.space, model.components_over(ctx), model.tag.value)

# ===== REGISTRY =====

class BuiltinSpec(NamedTuple):
    """Registry 항목. field는 registry key 또는 "F2"입니다."""

    name: str
    field: str
    source: str
    target: str
    description: str
    build: Callable[[FieldCtx], list[MPoly]]


BUILTINS: dict[str, BuiltinSpec] = {}


def _register(name: str, field: str, source: str, target: str, description: str):
    def decorator(fn: Callable[[FieldCtx], list[MPoly]]):
        BUILTINS[name] = BuiltinSpec(name, field, source, target, description, fn)
        return fn

    return decorator


def _pencil_conics(ctx: FieldCtx) -> tuple[MPoly, MPoly, MPoly, MPoly, MPoly]:
    x, y, z = MPoly.gens(ctx, 3)
    return x, y, z, y * y + x * z, x * x + x * y + z * z


@_register("oneLink_p100", "F2", "P2", "P2", "φ_[1:0:0] = [(x+y)f₁+zf₂ : yf₁ : zf₁], π₄ 보존 involution")
def _one_link_p100(ctx: FieldCtx) -> list[MPoly]:
    x, y, z, f1, f2 = _pencil_conics(ctx)
    return [(x + y) * f1 + z * f2, y * f1, z * f1]


@_register("oneLink_p010", "F2", "P2", "P2", "φ_[0:1:0] = [xf₂ : xf₁+yf₂ : zf₂]")
def _one_link_p010(ctx: FieldCtx) -> list[MPoly]:
    x, y, z, f1, f2 = _pencil_conics(ctx)
    return [x * f2, x * f1 + y * f2, z * f2]


@_register("oneLink_p001", "F2", "P2", "P2", "φ_[0:0:1] = [xf₁ : yf₁ : zf₁+xf₂]")
def _one_link_p001(ctx: FieldCtx) -> list[MPoly]:
    x, y, z, f1, f2 = _pencil_conics(ctx)
    return [x * f1, y * f1, z * f1 + x * f2]


@_register("oneLink_p110", "F2", "P2", "P2", "φ_[1:1:0] = φ_[1:0:0]∘φ_[0:1:0]∘φ_[1:0:0]")
def _one_link_p110(ctx: FieldCtx) -> list[MPoly]:
    x, y, z, f1, f2 = _pencil_conics(ctx)
    return [(x + z) * f2 + (x + y) * f1, f1 * (x + y) + f2 * (y + z), z * f2]


@_register("oneLink_p101", "F2", "P2", "P2", "φ_[1:0:1] = [yf₁+zf₂ : yf₂ : xf₂+yf₁]")
def _one_link_p101(ctx: FieldCtx) -> list[MPoly]:
    x, y, z, f1, f2 = _pencil_conics(ctx)
    return [y * f1 + z * f2, y * f2, x * f2 + y * f1]


@_register("oneLink22_p100", "F2", "P2", "P2", "[xy+yz+z² : (x+y)y : (x+y)(y+z)], π₂ 보존 involution")
def _one_link22_p100(ctx: FieldCtx) -> list[MPoly]:
    x, y, z = MPoly.gens(ctx, 3)
    return [x * y + y * z + z * z, (x + y) * y, (x + y) * (y + z)]


@_register("oneLink22_p101", "F2", "P2", "P2", "[x²+yz+z² : xy+y² : xz+y²+z²]")
def _one_link22_p101(ctx: FieldCtx) -> list[MPoly]:
    x, y, z = MPoly.gens(ctx, 3)
    return [x * x + y * z + z * z, x * y + y * y, x * z + y * y + z * z]


@_register("rho_Q", "F2", "P2", "P3", "ρ_Q = [x² : xy : xz : y²+yz+z²], 상은 x₀x₃+x₁²+x₁x₂+x₂² = 0 위")
def _rho_q(ctx: FieldCtx) -> list[MPoly]:
    x, y, z = MPoly.gens(ctx, 3)
    return [x * x, x * y, x * z, y * y + y * z + z * z]


@_register("phi_Q", "F4", "P1xP1", "P3", "L⁻¹∘Segre: P¹×P¹ → Q (F₄ 위)")
def _phi_q(ctx: FieldCtx) -> list[MPoly]:
    return [
        _poly("x0*y0", ctx, "P1xP1"),
        _poly("a^2*x0*y1 + a*x1*y0", ctx, "P1xP1"),
        _poly("x0*y1 + x1*y0", ctx, "P1xP1"),
        _poly("x1*y1", ctx, "P1xP1"),
    ]


@_register("phi_Q_inv", "F4", "P3", "P1xP1", "chart([z₀:z₂],[z₀:z₁])∘L: Q → P¹×P¹ (첫 번째 chart)")
def _phi_q_inv(ctx: FieldCtx) -> list[MPoly]:
    return phi_q_inverse_charts(ctx)[0].components


@_register("d6_bidegree12", "F2", "P1xP1", "P2", "[(x₀+x₁)y₀y₁ : x₀y₁(y₀+y₁) : x₁y₀(y₀+y₁)]")
def _d6_bidegree12(ctx: FieldCtx) -> list[MPoly]:
    x0, x1, y0, y1 = MPoly.gens(ctx, 4)
    return [(x0 + x1) * y0 * y1, x0 * y1 * (y0 + y1), x1 * y0 * (y0 + y1)]


@_register("d6_bidegree12_inv", "F2", "P2", "P1xP1", "([y(x+z) : z(x+y)], [x+z : x+y])")
def _d6_bidegree12_inv(ctx: FieldCtx) -> list[MPoly]:
    x, y, z = MPoly.gens(ctx, 3)
    return [y * (x + z), z * (x + y), x + z, x + y]


@_register("gamma_d6", "F64", "P1xP1", "P1xP1", "γ = ([a¹⁸x₀+a²¹x₁ : x₀+a¹²x₁], [a¹⁸y₀+a⁴²y₁ : y₀+a³³y₁])")
def _gamma_d6(ctx: FieldCtx) -> list[MPoly]:
    texts = ["a^18*x0 + a^21*x1", "x0 + a^12*x1", "a^18*y0 + a^42*y1", "y0 + a^33*y1"]
    return [_poly(t, ctx, "P1xP1") for t in texts]


@_register("gamma_d6_inv", "F64", "P1xP1", "P1xP1", "γ⁻¹ = ([a¹²x₀+a²¹x₁ : x₀+a¹⁸x₁], [a³³y₀+a⁴²y₁ : y₀+a¹⁸y₁])")
def _gamma_d6_inv(ctx: FieldCtx) -> list[MPoly]:
    texts = ["a^12*x0 + a^21*x1", "x0 + a^18*x1", "a^33*y0 + a^42*y1", "y0 + a^18*y1"]
    return [_poly(t, ctx, "P1xP1") for t in texts]


@_register("quintic_inv_1", "F2", "P2", "P2", "첫 번째 5차 involution (Frobenius 크기 5+2 궤도의 Geiser 생성원 관련)")
def _quintic_inv_1(ctx: FieldCtx) -> list[MPoly]:
    texts = [
        "x^5 + x^4*y + x*y^4 + x^2*y^2*z + x^3*z^2 + x^2*y*z^2 + x*y^2*z^2 + x^2*z^3 + x*y*z^3 + y*z^4",
        "x^4*y + x^3*y^2 + x*y^4 + y^5 + x*y^3*z + x^2*y*z^2 + x*y^2*z^2 + y^3*z^2 + x*y*z^3 + y^2*z^3 + x*z^4",
        "x^3*y^2 + x^4*z + x^3*y*z + x^2*y^2*z + y^4*z + x^3*z^2 + x^2*y*z^2 + x*y^2*z^2 + x*z^4 + y*z^4 + z^5",
    ]
    return [_poly(t, ctx, "P2") for t in texts]


@_register("quintic_inv_2", "F2", "P2", "P2", "두 번째 5차 involution")
def _quintic_inv_2(ctx: FieldCtx) -> list[MPoly]:
    texts = [
        "x^4*y + x^3*y^2 + x*y^4 + x^4*z + x^3*y*z + x^2*y^2*z + x*y^2*z^2 + x*y*z^3 + x*z^4 + z^5",
        "x^5 + x^4*y + x^2*y^3 + y^5 + x*y^3*z + x^2*y*z^2 + y^3*z^2 + x*z^4 + y*z^4 + z^5",
        "x^5 + x^3*y*z + x^2*y^2*z + y^4*z + x^2*y*z^2 + x*y^2*z^2 + y^2*z^3 + y*z^4 + z^5",
    ]
    return [_poly(t, ctx, "P2") for t in texts]


@_register("d6_inv_size2", "F64", "P2", "P2", "D₆ 모델의 크기 2 궤도 3차 involution")
def _d6_inv_size2(ctx: FieldCtx) -> list[MPoly]:
    texts = [
        "x^2*y + a^48*x*y^2 + a^39*x^2*z + a^33*x*y*z + a^36*y^2*z + a^27*x*z^2 + a^12*y*z^2",
        "a^6*x^2*y + a^54*x*y^2 + a^9*x^2*z + a^30*x*y*z + a^24*y^2*z + a^42*x*z^2 + a^27*y*z^2",
        "a^3*x^2*y + a^60*x*y^2 + a^6*x^2*z + a^18*x*y*z + a^48*y^2*z + a^57*x*z^2 + a^51*y*z^2",
    ]
    return [_poly(t, ctx, "P2") for t in texts]


@_register("d6_inv_size3_1", "F64", "P2", "P2", "D₆ 모델의 크기 3 궤도 5차 involution (첫 번째)")
def _d6_inv_size3_1(ctx: FieldCtx) -> list[MPoly]:
    texts = [
        "x^3*y^2 + a^28*x^2*y^3 + a^32*x^3*y*z + a^8*x^2*y^2*z + a^46*x*y^3*z + a^57*x^3*z^2"
        " + a^12*x^2*y*z^2 + a^29*x*y^2*z^2 + a^9*y^3*z^2 + a^61*x^2*z^3 + a^22*x*y*z^3 + a^48*y^2*z^3",
        "a^34*x^3*y^2 + a^18*x^2*y^3 + a^4*x^3*y*z + a^27*x^2*y^2*z + a^44*x*y^3*z + a^45*x^3*z^2"
        " + a^32*x^2*y*z^2 + a^11*x*y^2*z^2 + a^42*y^3*z^2 + a^15*x^2*z^3 + a^37*x*y*z^3 + a^28*y^2*z^3",
        "a^39*x^3*y^2 + a^33*x^2*y^3 + a*x^3*y*z + a^44*x^2*y^2*z + a^58*x*y^3*z + a^28*x^3*z^2"
        " + a^23*x^2*y*z^2 + a^24*x*y^2*z^2 + a^52*y^3*z^2 + a^21*x^2*z^3 + a^29*x*y*z^3 + a^51*y^2*z^3",
    ]
    return [_poly(t, ctx, "P2") for t in texts]


@_register("d6_inv_size3_2", "F64", "P2", "P2", "D₆ 모델의 크기 3 궤도 5차 involution (두 번째, λ = a²¹)")
def _d6_inv_size3_2(ctx: FieldCtx) -> list[MPoly]:
    texts = [
        "x^3*y^2 + x^2*y^3 + x^2*z^3 + x*y*z^3 + y^2*z^3"
        " + a^21*x^3*z^2 + a^21*x^2*y*z^2 + a^21*x*y^2*z^2 + a^21*y^3*z^2"
        " + a^42*x^3*y*z + a^42*x^2*y^2*z + a^42*x*y^3*z",
        "x^2*y^3 + x^2*y^2*z + x^2*y*z^2 + x^2*z^3"
        " + a^21*x*y^3*z + a^21*x*y^2*z^2 + a^21*x*y*z^3"
        " + a^42*x^3*y^2 + a^42*x^3*y*z + a^42*x^3*z^2 + a^42*y^3*z^2 + a^42*y^2*z^3",
        "x^3*y*z + x^2*y*z^2 + x*y*z^3"
        " + a^21*x^2*y^3 + a^21*x*y^3*z + a^21*x^3*z^2 + a^21*y^3*z^2 + a^21*x^2*z^3"
        " + a^42*x^3*y^2 + a^42*x^2*y^2*z + a^42*x*y^2*z^2 + a^42*y^2*z^3",
    ]
    return [_poly(t, ctx, "P2") for t in texts]


@_register("d5_h", "F2", "P2", "P2", "h = [xy : y(x+z) : x(y+z)], D₅ 모델 자기동형군의 생성원")
def _d5_h(ctx: FieldCtx) -> list[MPoly]:
    x, y, z = MPoly.gens(ctx, 3)
    return [x * y, y * (x + z), x * (y + z)]


@_register("fiberprod_phi4", "F2", "P2T", "P1T", "φ₄ = [x : ty+z]")
def _fiberprod_phi4(ctx: FieldCtx) -> list[MPoly]:
    return [_poly("x", ctx, "P2T"), _poly("t*y + z", ctx, "P2T")]


@_register("fiberprod_psi4", "F2", "P1T", "P2T", "ψ₄ = [(1+t³)u² : u²+t²uv+v² : tu²+uv+tv²]")
def _fiberprod_psi4(ctx: FieldCtx) -> list[MPoly]:
    texts = ["u^2 + t^3*u^2", "u^2 + t^2*u*v + v^2", "t*u^2 + u*v + t*v^2"]
    return [_poly(t, ctx, "P1T") for t in texts]


@_register("fiberprod_phi2", "F2", "P2T", "P1T", "φ₂ = [x : ty+z]")
def _fiberprod_phi2(ctx: FieldCtx) -> list[MPoly]:
    return [_poly("x", ctx, "P2T"), _poly("t*y + z", ctx, "P2T")]


@_register("fiberprod_psi2", "F2", "P1T", "P2T", "ψ₂ = [(t+t²)u² : u²+uv+v² : tu²+t²uv+tv²]")
def _fiberprod_psi2(ctx: FieldCtx) -> list[MPoly]:
    texts = ["t*u^2 + t^2*u^2", "u^2 + u*v + v^2", "t*u^2 + t^2*u*v + t*v^2"]
    return [_poly(t, ctx, "P1T") for t in texts]


def builtin_names() -> list[str]:
    """등록된 이름 (등록 순서)."""
    return list(BUILTINS)


@lru_cache(maxsize=None)
def builtin(name: str) -> RatMap:
    """이름으로 명시적 사상을 가져옵니다.

    Args:
        name: BUILTINS에 등록된 이름

    Returns:
        registry가 지정한 체 위의 RatMap

    Raises:
        UnknownName: 등록되지 않은 이름
    """
    spec = BUILTINS.get(name)
    if spec is None:
        raise UnknownName(f"no built-in map named {name!r}")
    ctx = gf2() if spec.field == "F2" else registry_field(spec.field)
    return RatMap(spec.source, spec.target, spec.build(ctx), name)

# ===== Q 모델 =====

def omega(ctx: FieldCtx) -> int:
    """ctx 안의 x²+x+1의 근 ξ. F₄에서는 x의 류와 같습니다."""
    return embed_with_min_poly(ctx, [1, 1, 1]).value


def q_frame_matrices(ctx: FieldCtx) -> tuple[list[list[int]], list[list[int]]]:
    """(L, L⁻¹) 행렬. L: Q → X는 [x₀ : x₁+ξx₂ : x₁+(ξ+1)x₂ : x₃]입니다."""
    w = omega(ctx)
    w2 = ctx.square(w)
    forward = [[1, 0, 0, 0], [0, 1, w, 0], [0, 1, w2, 0], [0, 0, 0, 1]]
    backward = [[1, 0, 0, 0], [0, w2, w, 0], [0, 1, 1, 0], [0, 0, 0, 1]]
    return forward, backward


def q_to_x(ctx: FieldCtx) -> RatMap:
    """L: Q → X (Segre 상)."""
    return linear_map(ctx, q_frame_matrices(ctx)[0], "L")


def x_to_q(ctx: FieldCtx) -> RatMap:
    """L⁻¹: X → Q. [z₀ : (ξ+1)z₁+ξz₂ : z₁+z₂ : z₃]."""
    return linear_map(ctx, q_frame_matrices(ctx)[1], "L_inv")


def phi_q_inverse_charts(ctx: FieldCtx) -> list[RatMap]:
    """Q → P¹×P¹의 네 chart.

    L을 적용한 좌표 z를 2×2 행렬 [[z₀,z₁],[z₂,z₃]]로 보면 첫 인수는 0이 아닌 열,
    두 번째 인수는 0이 아닌 행입니다. 순서는 (열 0, 행 0), (열 0, 행 1),
    (열 1, 행 0), (열 1, 행 1)입니다.
    """
    z = q_to_x(ctx).components
    charts = []
    for col in (0, 1):
        for row in (0, 1):
            first = [z[col], z[col + 2]]
            second = [z[2 * row], z[2 * row + 1]]
            charts.append(RatMap("P3", "P1xP1", first + second, f"phi_Q_inv[{col}{row}]"))
    return charts


def q_point_to_p1xp1(p: ProjPoint) -> ProjPoint:
    """Q 위의 점을 분모 좌표가 0이 아닌 첫 chart로 P¹×P¹에 보냅니다.

    Raises:
        IndeterminatePoint: 어느 chart에서도 정의되지 않는 경우
    """
    for chart in phi_q_inverse_charts(p.ctx):
        try:
            return chart(p)
        except IndeterminatePoint:
            continue
    raise IndeterminatePoint(f"no chart of Q → P1xP1 is defined at {p.text()}")


def q_chain_check() -> bool:
    """chart∘L∘Sq∘L⁻¹∘Segre가 F₄ 위에서 QTwist와 같은 유리사상인지."""
    ctx = registry_field("F4")
    chain = compose_all(builtin("phi_Q_inv"), square_map("P3", ctx), builtin("phi_Q"))
    return maps_equal_rational(chain, frob_ratmap(FrobTag.QTwist, ctx))


def q_form(ctx: FieldCtx | None = None) -> MPoly:
    """Q의 방정식 x₀x₃+x₁²+x₁x₂+x₂²."""
    return _poly("x0*x3 + x1^2 + x1*x2 + x2^2", ctx or gf2(), "P3")

# ===== D₆ 모델 =====

def d6_chain_check() -> bool:
    """φ₁₂∘γ∘QTwist∘γ⁻¹∘φ₁₂⁻¹가 F₆₄ 위에서 D6Twist와 같은지."""
    ctx = registry_field("F64")
    chain = compose_all(
        builtin("d6_bidegree12"),
        builtin("gamma_d6"),
        frob_ratmap(FrobTag.QTwist, ctx),
        builtin("gamma_d6_inv"),
        builtin("d6_bidegree12_inv"),
    )
    return maps_equal_rational(chain, frob_ratmap(FrobTag.D6Twist, ctx))

# ===== D₅ 모델 =====

def _cubic_from_vector(ctx: FieldCtx, basis: list[tuple[int, ...]], vector: list[int]) -> MPoly:
    terms = MPoly.zero(ctx, 3)
    for exps, c in zip(basis, vector):
        if c:
            terms = terms + MPoly.monomial(ctx, exps, c)
    return terms


@lru_cache(maxsize=1)
def build_phi_d5() -> RatMap:
    """q₅ = [1:a:a²] (a는 x⁵+x²+1의 근) 의 크기 5 궤도를 지나고 q₅에서 특이인 3차곡선계.

    Kernel basis로 얻은 φ₀는 직선 q₅qᵢ (i=1..4) 를 점 Pᵢ로 수축시킵니다.
    P₁..P₄를 [1:0:0], [0:1:0], [0:0:1], [1:1:1]로 보내는 사영변환 α를 순서 24가지에
    대해 만들고, φ = α∘φ₀가 φ∘Sq = D5Twist∘φ를 만족하는 첫 번째 순서를 고릅니다.

    Raises:
        WrongDimension: 3차곡선계가 3차원이 아닌 경우
        MismatchReport: 어느 순서도 켤레 관계를 만족하지 않는 경우
    """
    ctx = registry_field("F32")
    a = ctx.x
    q5 = normalize_ints("P2", (1, a, ctx.square(a)), ctx)
    points = orbit(frob_model(FrobTag.StdP2), q5).points
    system = position_matrix(points, 3, singular_at=[0])
    dim = kernel_dimension(system)
    if dim != 3:
        raise WrongDimension(f"cubic system through the quintic orbit has dimension {dim}, expected 3")
    basis = monomial_basis("P2", 3)
    phi0 = RatMap("P2", "P2", [_cubic_from_vector(ctx, basis, v) for v in kernel_basis(system)], "phi0")

    contracted = []
    for q in points[1:]:
        on_line = normalize_ints("P2", [u ^ v for u, v in zip(q.coords, q5.coords)], ctx)
        contracted.append(phi0(on_line).coords)

    sq = square_map("P2", ctx)
    twist = frob_ratmap(FrobTag.D5Twist, ctx)
    for order in permutations(range(4)):
        p1, p2, p3, p4 = (contracted[i] for i in order)
        columns = [[p1[r], p2[r], p3[r]] for r in range(3)]
        try:
            lam = apply_matrix(ctx, matrix_inverse(ctx, columns), p4)
            scaled = [[ctx.mul(lam[j], (p1, p2, p3)[j][r]) for j in range(3)] for r in range(3)]
            alpha = matrix_inverse(ctx, scaled)
        except ZeroInverse:
            continue
        phi = map_compose(linear_map(ctx, alpha, "alpha"), phi0)
        if maps_equal_rational(map_compose(phi, sq), map_compose(twist, phi)):
            logger.info("phi_d5 uses contracted point order %s", order)
            return RatMap("P2", "P2", phi.components, "phi_d5")
    raise MismatchReport("no ordering of the contracted points conjugates Sq to D5Twist")


def d5_pointwise_check(samples: int = D5_POINTWISE_SAMPLES) -> bool:
    """φ(Frob(p)) = D5Twist(φ(p))를 F_{2¹⁵}의 결정적 점 samples개에서 확인합니다."""
    phi = build_phi_d5()
    big = registry_field(D5_POINTWISE_FIELD)
    embed = make_embedding(phi.ctx, big)
    phi_big = RatMap("P2", "P2", [c.change_field(big, embed) for c in phi.components], "phi_d5")
    std = frob_model(FrobTag.StdP2)
    twist = frob_model(FrobTag.D5Twist)
    g = big.generator
    checked = 0
    i = 0
    while checked < samples:
        i += 1
        p = normalize_ints("P2", (1, big.pow(g, i), big.pow(g, 7 * i + 3)), big)
        try:
            lhs = phi_big(apply(std, p))
            rhs = apply(twist, phi_big(p))
        except IndeterminatePoint:
            continue
        if lhs != rhs:
            logger.warning("phi_d5 conjugation fails at %s", p.text())
            return False
        checked += 1
    return True

# ===== J₂ 예제 =====

def one_link_conjugation() -> dict:
    """J₂ 예제의 φ_{[1:0:0]} (oneLink22_p100) = A∘σ∘A⁻¹ (A = [[1,1,1],[0,1,1],[0,ω,ω²]], F₄ 위) 와 기저점 확인.

    Returns:
        conjugate (유리사상 동등), base_points (A의 열), vanishes (모든 성분이 기저점에서 0)
    """
    ctx = registry_field("F4")
    w = ctx.x
    w2 = ctx.square(w)
    matrix = [[1, 1, 1], [0, 1, 1], [0, w, w2]]
    conj = compose_all(linear_map(ctx, matrix, "A"), standard_quadratic(ctx), linear_map(ctx, matrix_inverse(ctx, matrix), "A_inv"))
    phi = builtin("oneLink22_p100").over(ctx)
    base_points = [normalize_ints("P2", [row[j] for row in matrix], ctx) for j in range(3)]
    vanishes = all(c.eval(p.coords) == 0 for p in base_points for c in phi.components)
    return {
        "conjugate": maps_equal_rational(conj, phi),
        "base_points": [p.text() for p in base_points],
        "vanishes": vanishes,
    }


def one_link_composition_check() -> bool:
    """φ_{[1:1:0]} = φ_{[1:0:0]}∘φ_{[0:1:0]}∘φ_{[1:0:0]}."""
    p100 = builtin("oneLink_p100")
    composite = compose_all(p100, builtin("oneLink_p010"), p100)
    return maps_equal_rational(composite, builtin("oneLink_p110"))

# ===== TWIST 반복 =====

def _closed_form_texts(tag: FrobTag, k: int) -> list[str] | None:
    e = 1 << k
    if tag == FrobTag.D6Twist:
        forms = {
            1: ["x^2*z^2", "x^2*y^2", "y^2*z^2"],
            2: ["z^4", "x^4", "y^4"],
            3: ["y^8*z^8", "x^8*z^8", "x^8*y^8"],
            4: ["y^16", "z^16", "x^16"],
            5: ["x^32*y^32", "y^32*z^32", "x^32*z^32"],
        }
        return forms.get(k)
    if tag == FrobTag.D5Twist:
        forms = {
            1: ["x^2*y^2", "x^2*y^2 + y^2*z^2", "x^2*y^2 + x^2*z^2"],
            2: ["x^4*y^4 + y^4*z^4", "x^4*z^4 + z^8", "x^4*z^4 + y^4*z^4"],
            3: ["x^8*y^8 + y^8*z^8", "x^8*y^8 + x^8*z^8", "y^16 + y^8*z^8"],
            4: ["x^32 + x^16*z^16", "x^32 + x^16*y^16", "x^32 + x^16*y^16 + x^16*z^16 + y^16*z^16"],
            5: ["x^32", "y^32", "z^32"],
        }
        return forms.get(k)
    if tag == FrobTag.StdP2:
        return [f"x^{e}", f"y^{e}", f"z^{e}"]
    if tag == FrobTag.QTwist:
        if k % 2:
            return [f"y0^{e}", f"y1^{e}", f"x0^{e}", f"x1^{e}"]
        return [f"x0^{e}", f"x1^{e}", f"y0^{e}", f"y1^{e}"]
    return None


def closed_form_iterate(tag: FrobTag | str, k: int) -> RatMap:
    """Twisted Frobenius의 k번 반복의 약분된 닫힌 형태.

    Raises:
        ValueError: 닫힌 형태가 알려지지 않은 (tag, k)
    """
    tag = FrobTag(tag)
    texts = _closed_form_texts(tag, k)
    if texts is None:
        raise ValueError(f"no closed form for {tag.value}^{k}")
    model = frob_model(tag)
    comps = [_poly(t, gf2(), model.space) for t in texts]
    return RatMap(model.space, model.space, comps, f"{tag.value}^{k}")


def twist_iterate_matches(tag: FrobTag | str, k: int) -> bool:
    """기호적 k번 합성이 닫힌 형태와 같은 유리사상인지."""
    model = frob_model(tag)
    iterate = RatMap(model.space, model.space, twist_iterate(model, k), f"{model.tag.value}^{k}")
    return maps_equal_rational(iterate, closed_form_iterate(tag, k))
