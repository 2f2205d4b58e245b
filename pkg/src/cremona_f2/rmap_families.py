"""Conic pencil을 보존하는 involution family와 관련 항등식.

두 family L2star (π₂), L4star (π₄) 의 원소는 a ∈ F₂(t)로 매개화된
[x : λx+y : μx+z] 형태이며, (λ, μ)는 각 family의 conic 위의 F₂(t)-점입니다.
여기에 pencil 관련 보조 검증 (유일한 공통 접선, double section,
fiber product 역사상) 을 함께 둡니다.
"""

import logging
from typing import NamedTuple

from cremona_f2.ff import FieldCtx, gf2, gf2x_degree, gf2x_divmod, gf2x_gcd, gf2x_mul, registry_field
from cremona_f2.geom import points_of_p2
from cremona_f2.poly import MPoly, parse_poly
from cremona_f2.rmap import (
    RatMap,
    RationalFunction1V,
    fibration,
    homogenize,
    identity,
    is_involution,
    map_compose,
    maps_equal_modulo,
    maps_equal_rational,
    preserves_fibration,
    space,
)
from cremona_f2.rmap_builtins import builtin

logger = logging.getLogger(__name__)

# ===== 설정 =====

# Family tag와 보존하는 fibration
FAMILY_PENCIL: dict[str, str] = {"L2star": "pi2", "L4star": "pi4"}

# 일반 합성 is_involution으로 교차 확인하는 a (분자, 분모 bitmask)
GENERIC_CROSSCHECK: tuple[tuple[int, int], ...] = ((0b1, 0b1), (0b10, 0b1), (0b11, 0b1))

# unique_tangent_check가 다루는 체 (차수 → registry key)
TANGENT_FIELDS: dict[int, str] = {2: "F4", 3: "F8", 4: "F16", 5: "F32", 6: "F64", 7: "F128", 8: "F256"}

# Fiber product의 chart 방정식 (P2T 변수 x, y, z, t)
FIBER_RELATIONS: dict[str, str] = {
    "4": "t^2*y^2 + t^2*x*z + x^2 + x*y + z^2",
    "2": "t^2*x*y + t^2*y^2 + x^2 + x*z + z^2",
}

# ===== FAMILY =====

class FamilyParts(NamedTuple):
    """Family 사상의 구성 요소.

    t = upper/lower를 넣고 lower^degree를 곱한 D, L, M으로
    사상은 [D·x : L·x+D·y : M·x+D·z]입니다.
    """

    tag: str
    a: RationalFunction1V
    upper: MPoly
    lower: MPoly
    degree: int
    d: MPoly
    lam: MPoly
    mu: MPoly
    ratmap: RatMap


def _check_tag(tag: str) -> str:
    if tag not in FAMILY_PENCIL:
        raise ValueError(f"unknown family {tag!r}; expected one of {sorted(FAMILY_PENCIL)}")
    return FAMILY_PENCIL[tag]


def family_parts(tag: str, a: RationalFunction1V, ctx: FieldCtx | None = None) -> FamilyParts:
    """a = A/B에서 (λ, μ) = (Lₙ/Dₙ, Mₙ/Dₙ)를 계산하고 t = T₁/T₂로 동차화합니다.

    L2star: λ = (a+t)/(a²+t), μ = a(a+t)/(a²+t)
    L4star: λ = (1+ta)/(a²+t), μ = a(1+ta)/(a²+t)

    공통 분모 Dₙ = A²+tB²를 쓰고 세 다항식의 gcd로 약분합니다.
    """
    pencil = _check_tag(tag)
    ctx = ctx or gf2()
    big_a, big_b = a.num, a.den
    t = 0b10
    if tag == "L2star":
        common = big_a ^ gf2x_mul(t, big_b)
    else:
        common = big_b ^ gf2x_mul(t, big_a)
    num_l = gf2x_mul(big_b, common)
    num_m = gf2x_mul(big_a, common)
    num_d = gf2x_mul(big_a, big_a) ^ gf2x_mul(t, gf2x_mul(big_b, big_b))
    g = gf2x_gcd(gf2x_gcd(num_l, num_m), num_d)
    num_l, num_m, num_d = (gf2x_divmod(v, g)[0] for v in (num_l, num_m, num_d))
    degree = max(gf2x_degree(num_l), gf2x_degree(num_m), gf2x_degree(num_d))

    pi = fibration(pencil, ctx)
    upper, lower = pi.second, pi.first
    d = homogenize(num_d, degree, upper, lower)
    lam = homogenize(num_l, degree, upper, lower)
    mu = homogenize(num_m, degree, upper, lower)
    x, y, z = MPoly.gens(ctx, 3)
    ratmap = RatMap("P2", "P2", [d * x, lam * x + d * y, mu * x + d * z], f"{tag}[{a!r}]")
    return FamilyParts(tag, a, upper, lower, degree, d, lam, mu, ratmap)


def family_map(tag: str, a: RationalFunction1V) -> RatMap:
    """Family 원소 [x : λx+y : μx+z]를 분모를 없앤 동차 3성분으로 반환합니다."""
    return family_parts(tag, a).ratmap


def family_involution_check(tag: str, a: RationalFunction1V) -> bool:
    """구조를 이용한 involution 판정.

    T₁∘f = c·T₁, T₂∘f = c·T₂가 정확히 성립하면 D, L, M은 f로 c^k배가 되고,
    계수 행렬 [[D,0,0],[L,D,0],[M,0,D]]의 제곱이 D²·I이므로
    f∘f = c^k·D²·id입니다. 이 함수는 그 전제를 모두 확인합니다.
    """
    parts = family_parts(tag, a)
    f = parts.ratmap
    if not preserves_fibration(f, fibration(FAMILY_PENCIL[tag])):
        return False
    upper_image = parts.upper.compose(f.components)
    c = upper_image.exact_div(parts.upper)
    if c is None:
        return False
    # 행렬 제곱의 비대각 성분 2·L·D, 2·M·D는 표수 2에서 항상 0입니다.
    return parts.lower.compose(f.components) == c * parts.lower


def family_samples() -> list[RationalFunction1V]:
    """차수 3 이하의 16개 다항식과 4개의 유리함수 (1/t, 1/(t+1), 1/(t²+t+1), (t+1)/t)."""
    samples = [RationalFunction1V(v) for v in range(16)]
    samples += [
        RationalFunction1V(0b1, 0b10),
        RationalFunction1V(0b1, 0b11),
        RationalFunction1V(0b1, 0b111),
        RationalFunction1V(0b11, 0b10),
    ]
    return samples


def family_generic_crosscheck(tag: str) -> bool:
    """작은 a 몇 개에 대해 일반 합성 is_involution도 통과하는지."""
    return all(is_involution(family_map(tag, RationalFunction1V(n, d))) for n, d in GENERIC_CROSSCHECK)

# ===== CONIC 항등식 =====

def _conic_condition(tag: str, lam: MPoly, mu: MPoly, d: MPoly, t: MPoly) -> MPoly:
    # 분모 D²를 곱한 conic 조건
    if tag == "L2star":
        return (lam * lam + lam * d) * t + mu * mu + mu * d
    return lam * d + mu * mu + t * (lam * lam + mu * d)


def verify_conic_identity(tag: str) -> bool:
    """a, t를 독립 변수로 두고 매개화를 conic 조건에 넣은 분자가 0인지.

    L2star: (λ²+λ)t + μ² + μ = 0, L4star: λ + μ² + t(λ²+μ) = 0.
    """
    _check_tag(tag)
    a, t = MPoly.gens(gf2(), 2)
    one = MPoly.constant(gf2(), 2, 1)
    d = a * a + t
    lam = a + t if tag == "L2star" else one + t * a
    mu = a * lam
    return _conic_condition(tag, lam, mu, d, t).is_zero()


def excluded_point_check(tag: str) -> bool:
    """매개화가 놓치는 점 ((0,1) for L2star, (0,t) for L4star) 도 conic 위에 있는지."""
    _check_tag(tag)
    ctx = gf2()
    (t,) = MPoly.gens(ctx, 1)
    zero = MPoly.zero(ctx, 1)
    one = MPoly.constant(ctx, 1, 1)
    mu = one if tag == "L2star" else t
    return _conic_condition(tag, zero, mu, one, t).is_zero()

# ===== 공통 접선 =====

def _line_points(line: tuple[int, ...]) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    a, b, c = line
    if a == 1:
        return (b, 1, 0), (c, 0, 1)
    if b == 1:
        return (1, 0, 0), (0, c, 1)
    return (1, 0, 0), (0, 1, 0)


def _is_tangent(conic: MPoly, p: tuple[int, ...], r: tuple[int, ...]) -> bool:
    # 직선 sP+tR 위로 제한한 αs²+βst+γt²에서 β = 0이고 항등적으로 0이 아닌지
    alpha = conic.eval(p)
    gamma = conic.eval(r)
    beta = conic.eval([u ^ v for u, v in zip(p, r)]) ^ alpha ^ gamma
    return beta == 0 and (alpha != 0 or gamma != 0)


def common_tangents(pencil: str, k: int) -> list[tuple[int, ...]]:
    """F_{2^k} 위에서 pencil의 두 생성 conic 모두에 접하는 직선 (쌍대 좌표)."""
    ctx = gf2() if k == 1 else registry_field(TANGENT_FIELDS[k])
    pi = fibration(pencil, ctx)
    tangents = []
    for line in points_of_p2(ctx):
        p, r = _line_points(line.coords)
        if _is_tangent(pi.first, p, r) and _is_tangent(pi.second, p, r):
            tangents.append(line.coords)
    return tangents


def unique_tangent_check(pencil: str, k: int) -> bool:
    """x = 0이 두 생성 conic에 동시에 접하는 유일한 직선인지.

    Args:
        pencil: "pi2" 또는 "pi4"
        k: 체 차수 (1 ≤ k ≤ 8)
    """
    if not 1 <= k <= 8:
        raise ValueError(f"field degree must be between 1 and 8, got {k}")
    return common_tangents(pencil, k) == [(1, 0, 0)]


def pencil_restriction_is_square(pencil: str) -> bool:
    """x = 0으로 제한한 두 생성 conic이 모두 짝수 지수만 가지는지 (sf₁+tf₂가 완전제곱)."""
    ctx = gf2()
    pi = fibration(pencil, ctx)
    x, y, z = MPoly.gens(ctx, 3)
    zero = MPoly.zero(ctx, 3)
    for conic in (pi.first, pi.second):
        restricted = conic.compose([zero, y, z])
        if any(e % 2 for exps in restricted.exponents() for e in exps):
            return False
    return True

# ===== DOUBLE SECTION, FIBER PRODUCT =====

def double_section_check() -> dict[str, bool]:
    """([0:s:t],[s²:t²])가 X₄, X₂ 위에 항등적으로 놓이는지.

    X₄: T(y²+xz) + S(x²+xy+z²), X₂: T·y(x+y) + S(x²+xz+z²) (변수 x, y, z, S, T).
    """
    ctx = gf2()
    names = ("x", "y", "z", "S", "T")
    surfaces = {
        "X4": parse_poly("T*y^2 + T*x*z + S*x^2 + S*x*y + S*z^2", ctx, names),
        "X2": parse_poly("T*x*y + T*y^2 + S*x^2 + S*x*z + S*z^2", ctx, names),
    }
    s, t = MPoly.gens(ctx, 2)
    subs = [MPoly.zero(ctx, 2), s, t, s.square(), t.square()]
    return {name: eq.compose(subs).is_zero() for name, eq in surfaces.items()}


def fiber_relation(which: str, ctx: FieldCtx | None = None) -> MPoly:
    """Y₄ 또는 Y₂의 chart 방정식."""
    return parse_poly(FIBER_RELATIONS[which], ctx or gf2(), space("P2T").names)


def fiber_product_check(which: str) -> dict[str, bool]:
    """φ∘ψ = [u:v] (정확히) 와 ψ∘φ = id (Y 위에서).

    Args:
        which: "4" 또는 "2"
    """
    phi = builtin(f"fiberprod_phi{which}")
    psi = builtin(f"fiberprod_psi{which}")
    forward = maps_equal_rational(map_compose(phi, psi), identity("P1T"))
    backward = maps_equal_modulo(map_compose(psi, phi), identity("P2T"), fiber_relation(which))
    logger.debug("fiber product %s: forward=%s backward=%s", which, forward, backward)
    return {"forward": forward, "backward": backward}
