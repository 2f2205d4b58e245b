"""공개된 분류 결과: 단계별 집계표, 대표점 지수 목록, 생성원 목록의 집계.

대표점은 공개 표와 같은 modulus에서 "a^k" (x의 류의 거듭제곱)로 만듭니다.
계산된 대표점은 탐색 순서에 따라 다를 수 있으므로 비교는 classify의
orbits_equivalent로 합니다.
"""

from typing import Callable, NamedTuple, Optional

from cremona_f2.errors import UnsupportedPair
from cremona_f2.ff import FieldCtx, registry_field
from cremona_f2.geom import ProjPoint, normalize_ints

# ===== 설정 =====

# 분류를 지원하는 (surface, d)
SUPPORTED_PAIRS: tuple[tuple[str, int], ...] = (
    ("P2", 3), ("P2", 6), ("P2", 7), ("P2", 8),
    ("Q", 4), ("Q", 6), ("Q", 7),
    ("D5", 3), ("D5", 4),
    ("D6", 2), ("D6", 3), ("D6", 4), ("D6", 5),
)

SURFACES: tuple[str, ...] = ("P2", "Q", "D5", "D6")

# ===== 단계별 집계 =====

# P²: (step0, general position, classes). 짝수 d의 step0는 표에 없습니다.
# Q, D₅, D₆: (step0, 크기 d, general position, classes)
STAGE_TABLES: dict[tuple[str, int], tuple[Optional[int], ...]] = {
    ("P2", 3): (4, 8, 1),
    ("P2", 6): (None, 32, 2),
    ("P2", 7): (20, 1680, 10),
    ("P2", 8): (None, 400, 38),
    ("Q", 4): (225, 54, 0, 0),
    ("Q", 6): (3969, 650, 480, 5),
    ("Q", 7): (16383, 2340, 2160, 18),
    ("D5", 3): (65, 20, 20, 4),
    ("D5", 4): (257, 60, 60, 12),
    ("D6", 2): (21, 9, 9, 1),
    ("D6", 3): (81, 26, 20, 2),
    ("D6", 4): (273, 63, 63, 4),
    ("D6", 5): (993, 198, 198, 11),
}


def class_count(surface: str, d: int) -> int:
    """공개된 궤도류 개수 N_d."""
    return published_stages(surface, d)[-1]


def published_stages(surface: str, d: int) -> tuple[Optional[int], ...]:
    try:
        return STAGE_TABLES[(surface, d)]
    except KeyError as exc:
        raise UnsupportedPair(f"no published table for {surface} with d={d}") from exc

# ===== 대표점 지수 =====

P2_D6_EXPONENTS = (2, 12)
P2_D7_EXPONENTS = (5, 9, 10, 11, 17, 18, 22, 24, 26, 39)
P2_D8_FORM1_EXPONENTS = (1, 3, 5, 9, 10, 11, 13, 22, 26, 39, 47, 58)
P2_D8_FORM2_EXPONENTS = (
    1, 5, 6, 7, 9, 10, 11, 13, 14, 15, 18, 19, 21, 22, 23, 25,
    26, 27, 35, 38, 41, 42, 43, 45, 46, 54,
)
Q_D6_EXPONENTS = (3, 5, 6, 7, 13)
Q_D7_EXPONENTS = (1, 3, 5, 7, 9, 11, 13, 15, 17, 21, 25, 29, 33, 37, 47, 61, 87, 133)
D5_D3_EXPONENTS = (1103, 4911, 4959, 5323)
D5_D4_EXPONENTS = (
    121, 10293, 17789, 18725, 40151, 40331, 43157, 50865, 77161, 169277, 211821, 216373,
)
D6_D3_EXPONENTS = (7, 21)
D6_D4_EXPONENTS = (1, 3, 7, 9)
D6_D5_EXPONENTS = (1, 3, 5, 7, 9, 15, 17, 19, 23, 25, 29)


class PublishedRepresentative(NamedTuple):
    """공개 표의 대표점 한 개. label은 "k=5" 같은 식별자입니다."""

    label: str
    point: ProjPoint


def _p2(ctx: FieldCtx, *coords: int) -> ProjPoint:
    return normalize_ints("P2", coords, ctx)


def _p2_d3() -> list[PublishedRepresentative]:
    ctx = registry_field("F8")
    a = ctx.x
    return [PublishedRepresentative("[1:a:a^2]", _p2(ctx, 1, a, ctx.square(a)))]


def _p2_d6() -> list[PublishedRepresentative]:
    ctx = registry_field("F64")
    a = ctx.power_of_x
    return [PublishedRepresentative(f"k={k}", _p2(ctx, 1, a(k), a(9))) for k in P2_D6_EXPONENTS]


def _p2_d7() -> list[PublishedRepresentative]:
    ctx = registry_field("F128")
    a = ctx.power_of_x
    return [PublishedRepresentative(f"k={k}", _p2(ctx, 1, a(1), a(k))) for k in P2_D7_EXPONENTS]


def _p2_d8() -> list[PublishedRepresentative]:
    ctx = registry_field("F256")
    a = ctx.power_of_x
    b = a(17)
    b2 = ctx.square(b)
    out = [PublishedRepresentative(f"[1:a^{k}:b]", _p2(ctx, 1, a(k), b)) for k in P2_D8_FORM1_EXPONENTS]
    out += [
        PublishedRepresentative(f"[1:a^{k}:b^2+b*a^{k}]", _p2(ctx, 1, a(k), b2 ^ ctx.mul(b, a(k))))
        for k in P2_D8_FORM2_EXPONENTS
    ]
    return out


def _q_point(ctx: FieldCtx, u: int, v: int) -> ProjPoint:
    return normalize_ints("P1xP1", (u, 1, v, 1), ctx)


def _q_d4() -> list[PublishedRepresentative]:
    return []


def _q_d6() -> list[PublishedRepresentative]:
    ctx = registry_field("F64")
    a = ctx.power_of_x
    return [PublishedRepresentative(f"k={k}", _q_point(ctx, a(1), a(k))) for k in Q_D6_EXPONENTS]


def _q_d7() -> list[PublishedRepresentative]:
    ctx = registry_field("F2_14")
    a = ctx.power_of_x
    return [PublishedRepresentative(f"k={k}", _q_point(ctx, a(k), a(128 * k))) for k in Q_D7_EXPONENTS]


def _d5_d3() -> list[PublishedRepresentative]:
    ctx = registry_field("F2_15")
    out = []
    for k in D5_D3_EXPONENTS:
        z = ctx.power_of_x(k)
        lam = ctx.inv(ctx.pow(z, 8) ^ ctx.pow(z, 7) ^ 1)
        out.append(PublishedRepresentative(f"k={k}", _p2(ctx, 1, lam, z)))
    return out


def _d5_d4() -> list[PublishedRepresentative]:
    ctx = registry_field("F2_20")
    a = ctx.power_of_x
    return [PublishedRepresentative(f"k={k}", _p2(ctx, 1, a(k), 1 ^ a(16 * k))) for k in D5_D4_EXPONENTS]


def _d6_d2() -> list[PublishedRepresentative]:
    ctx = registry_field("F64")
    a = ctx.power_of_x
    return [PublishedRepresentative("[a^-12:a^3:1]", _p2(ctx, a(-12), a(3), 1))]


def _d6_d3() -> list[PublishedRepresentative]:
    ctx = registry_field("F64")
    a = ctx.power_of_x
    return [PublishedRepresentative(f"k={k}", _p2(ctx, 1, a(k), 1)) for k in D6_D3_EXPONENTS]


def _d6_d4() -> list[PublishedRepresentative]:
    ctx = registry_field("F2_12")
    a = ctx.power_of_x
    return [
        PublishedRepresentative(f"k={k}", _p2(ctx, a(15 * k), a(-240 * k), 1)) for k in D6_D4_EXPONENTS
    ]


def _d6_d5() -> list[PublishedRepresentative]:
    ctx = registry_field("F2_30")
    r = (ctx.order - 1) // 993
    a = ctx.power_of_x
    # 후보 형태 [b³²:b:1] (b = a^{rk}). 출판된 목록은 앞의 두 좌표가 바뀌어 있어 궤도 크기가 15가 됩니다.
    return [
        PublishedRepresentative(f"k={k}", _p2(ctx, a(32 * r * k), a(r * k), 1)) for k in D6_D5_EXPONENTS
    ]


_CONSTRUCTORS: dict[tuple[str, int], Callable[[], list[PublishedRepresentative]]] = {
    ("P2", 3): _p2_d3,
    ("P2", 6): _p2_d6,
    ("P2", 7): _p2_d7,
    ("P2", 8): _p2_d8,
    ("Q", 4): _q_d4,
    ("Q", 6): _q_d6,
    ("Q", 7): _q_d7,
    ("D5", 3): _d5_d3,
    ("D5", 4): _d5_d4,
    ("D6", 2): _d6_d2,
    ("D6", 3): _d6_d3,
    ("D6", 4): _d6_d4,
    ("D6", 5): _d6_d5,
}


def published_representatives(surface: str, d: int) -> list[PublishedRepresentative]:
    """(surface, d)의 공개 대표점 목록.

    Raises:
        UnsupportedPair: 지원하지 않는 조합
    """
    build = _CONSTRUCTORS.get((surface, d))
    if build is None:
        raise UnsupportedPair(f"no published representatives for {surface} with d={d}")
    return build()

# ===== 생성원 목록 =====

# 생성원 집합의 표별 구성. P² d=3은 분류되지만 생성원에는 들어가지 않습니다.
INVENTORY_AUTOMORPHISMS = 2
INVENTORY_GEISER_5_PLUS_2 = 2
INVENTORY_ROWS: dict[str, tuple[tuple[str, int], ...]] = {
    "P2": (("P2", 6), ("P2", 7), ("P2", 8)),
    "Q": (("Q", 4), ("Q", 6), ("Q", 7)),
    "D6": (("D6", 2), ("D6", 3), ("D6", 4), ("D6", 5)),
    "D5": (("D5", 3), ("D5", 4)),
}
INVENTORY_TABLE_TOTALS: dict[str, int] = {"P2": 54, "Q": 23, "D6": 18, "D5": 16}
INVENTORY_TOTAL = 111
