"""Galois 궤도 분류의 단계 함수와 계수 lemma.

분류는 다음 단계로 진행됩니다:
1. 후보 생성 (frob.labelled_candidates)
2. 궤도 크기가 정확히 d인 것만 남김 (P²는 점마다, 나머지는 궤도당 하나)
3. Surface별 general position 판정
4. L_all 집합을 이용한 자기동형 중복 제거 (입력 순서에 의존하므로 순차 실행)

2와 3은 chunk 단위로 독립적이므로 workflow에서 병렬로 실행하고 입력 순서대로 합칩니다.
"""

import logging
from itertools import combinations
from typing import Iterable, Sequence

from cremona_f2.aut import PointAction, SurfaceAutoSet, automorphisms_for, pgl3_f2
from cremona_f2.errors import UnsupportedPair
from cremona_f2.ff import FieldCtx, embed_with_min_poly, irreducible_polynomials, registry_field
from cremona_f2.frob import (
    CANDIDATE_FIELDS,
    SURFACE_MODEL,
    FrobTag,
    GOrbit,
    frob_model,
    orbit,
    orbit_size,
)
from cremona_f2.geom import (
    PositionReport,
    ProjPoint,
    general_position_p1xp1,
    general_position_p2,
    normalize_ints,
    points_of_p2,
)
from cremona_f2.known_results import (
    INVENTORY_AUTOMORPHISMS,
    INVENTORY_ROWS,
    INVENTORY_TOTAL,
    published_representatives,
)
from cremona_f2.state_classify import Inventory, InventoryRow, MatchReport, OrbitClass, Survivor

logger = logging.getLogger(__name__)

# ===== 설정 =====

# D₅ 모델에서 orbit에 더해 general position을 확인하는 점
D5_BOUNDARY_POINTS: tuple[tuple[int, int, int], ...] = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))

# D₆ 모델에서 orbit에 더해 general position을 확인하는 점
D6_BOUNDARY_POINTS: tuple[tuple[int, int, int], ...] = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

# 궤도당 대표 하나만 남기는 surface (P²는 점 단위로 셈)
ONE_PER_ORBIT: dict[str, bool] = {"P2": False, "Q": True, "D5": True, "D6": True}

# 전수 대조가 가능한 작은 경우
BRUTE_FORCE_FIELDS: dict[tuple[str, int], str] = {
    ("P2", 3): "F8",
    ("D6", 2): "F64",
    ("D6", 3): "F64",
}

# 5+2 Geiser 계산의 체 (F₄와 F₃₂를 모두 포함)
GEISER_FIELD = "F2_10"

# x⁵+x²+1 (하위 차수부터)
QUINTIC_MODULUS: tuple[int, ...] = (1, 0, 1, 0, 0, 1)

# ===== 점 key =====

PointKey = tuple[str, str, tuple[int, ...]]


def point_key(p: ProjPoint) -> PointKey:
    """정규화 좌표와 체 tag로 만든 비교 key."""
    return (p.ctx.name, p.space, p.coords)


def orbit_key(o: GOrbit) -> frozenset[PointKey]:
    return frozenset(point_key(q) for q in o.points)


def check_pair(surface: str, d: int) -> None:
    """지원하는 (surface, d)인지 확인합니다.

    Raises:
        UnsupportedPair: 지원하지 않는 조합
    """
    if (surface, d) not in CANDIDATE_FIELDS:
        raise UnsupportedPair(f"{surface} with d={d} is not a supported classification")

# ===== GENERAL POSITION =====

def _with_boundary(points: Sequence[ProjPoint], boundary: Iterable[tuple[int, ...]]) -> list[ProjPoint]:
    ctx = points[0].ctx
    return list(points) + [normalize_ints("P2", b, ctx) for b in boundary]


def position_report(surface: str, points: Sequence[ProjPoint]) -> PositionReport:
    """Surface별 general position 판정 결과."""
    if surface == "P2":
        return general_position_p2(points)
    if surface == "Q":
        return general_position_p1xp1(points)
    if surface == "D5":
        return general_position_p2(_with_boundary(points, D5_BOUNDARY_POINTS))
    if surface == "D6":
        return general_position_p2(_with_boundary(points, D6_BOUNDARY_POINTS))
    raise UnsupportedPair(f"unknown surface {surface!r}")


def general_position_on_surface(surface: str, o: GOrbit | Sequence[ProjPoint]) -> bool:
    """궤도가 surface 모델에서 general position에 있는지.

    D₅는 네 점 [1:0:0], [0:1:0], [0:0:1], [1:1:1]을, D₆는 세 좌표점을 더해
    P²의 조건으로 판정합니다.
    """
    points = o.points if isinstance(o, GOrbit) else tuple(o)
    return position_report(surface, points).ok

# ===== 단계 함수 =====

def filter_orbit_size(
    surface: str, d: int, candidates: Sequence[tuple[str, ProjPoint]]
) -> list[Survivor]:
    """궤도 크기가 정확히 d인 후보 (불확정점은 버림). 중복 궤도는 이 단계에서 남겨 둡니다."""
    model = frob_model(SURFACE_MODEL[surface])
    out: list[Survivor] = []
    for label, p in candidates:
        if orbit_size(model, p) == d:
            out.append(Survivor(label=label, orbit=orbit(model, p)))
    return out


def one_per_orbit(surface: str, survivors: Sequence[Survivor]) -> list[Survivor]:
    """입력 순서에서 처음 나온 것만 남깁니다. P²는 그대로 둡니다."""
    if not ONE_PER_ORBIT[surface]:
        return list(survivors)
    seen: set[PointKey] = set()
    out = []
    for s in survivors:
        if point_key(s["orbit"].points[0]) in seen:
            continue
        seen |= orbit_key(s["orbit"])
        out.append(s)
    return out


def filter_general_position(surface: str, survivors: Sequence[Survivor]) -> list[Survivor]:
    return [s for s in survivors if general_position_on_surface(surface, s["orbit"])]


def dedup_by_automorphisms(
    surface: str, survivors: Sequence[Survivor], autos: SurfaceAutoSet | None = None
) -> list[Survivor]:
    """L_all 집합으로 자기동형 중복을 제거합니다.

    L_all에 없는 후보 p를 결과에 넣고, 모든 자기동형 α에 대해 α(p)의 궤도 전체를
    L_all에 더합니다. 결과는 입력 순서에 의존합니다.
    """
    if not survivors:
        return []
    model = frob_model(SURFACE_MODEL[surface])
    ctx = survivors[0]["orbit"].points[0].ctx
    autos = autos or automorphisms_for(surface, ctx)
    seen: set[PointKey] = set()
    out: list[Survivor] = []
    for s in survivors:
        p = s["orbit"].points[0]
        if point_key(p) in seen:
            continue
        out.append(s)
        for alpha in autos.elements:
            seen |= orbit_key(orbit(model, alpha.act(p)))
    size = survivors[0]["orbit"].size
    logger.info("%s d=%d: %d survivors reduce to %d classes", surface, size, len(survivors), len(out))
    return out


def orbits_equivalent(surface: str, p: ProjPoint, q: ProjPoint, autos: SurfaceAutoSet | None = None) -> bool:
    """어떤 자기동형이 p를 q의 Galois 궤도 안으로 보내는지."""
    model = frob_model(SURFACE_MODEL[surface])
    target = orbit_key(orbit(model, q))
    autos = autos or automorphisms_for(surface, p.ctx)
    return any(point_key(alpha.act(p)) in target for alpha in autos.elements)

# ===== 결과 정리 =====

def to_orbit_class(surface: str, s: Survivor) -> OrbitClass:
    o = s["orbit"]
    rep = o.points[0]
    return OrbitClass(
        surface=surface,
        size=o.size,
        field=rep.ctx.name,
        representative=rep.text(),
        orbit=[q.text() for q in o.points],
        provenance=s["label"],
    )


def audit_classes(surface: str, d: int, survivors: Sequence[Survivor]) -> list[str]:
    """궤도 크기와 general position을 다시 확인하고 위반 대표점을 반환합니다."""
    model = frob_model(SURFACE_MODEL[surface])
    bad = []
    for s in survivors:
        p = s["orbit"].points[0]
        if orbit_size(model, p) != d or not general_position_on_surface(surface, orbit(model, p)):
            bad.append(p.text())
    return bad


def dedup_is_sound(surface: str, representatives: Sequence[ProjPoint]) -> bool:
    """서로 다른 두 대표점이 동치가 아닌지 전부 확인합니다."""
    if not representatives:
        return True
    autos = automorphisms_for(surface, representatives[0].ctx)
    for p, q in combinations(representatives, 2):
        if orbits_equivalent(surface, p, q, autos):
            return False
    return True


def match_published_representatives(
    surface: str, d: int, representatives: Sequence[ProjPoint]
) -> MatchReport:
    """공개 대표점과 계산된 대표점 사이의 전단사를 확인합니다.

    Args:
        surface: P2, Q, D5, D6
        d: 궤도 크기
        representatives: 분류로 얻은 대표점

    Returns:
        MatchReport. 실패 시 raise_for_mismatch()가 MismatchReport를 발생시킵니다.
    """
    published = published_representatives(surface, d)
    report = MatchReport(surface=surface, size=d)
    if not published and not representatives:
        return report
    ctx = (published[0].point if published else representatives[0]).ctx
    autos = automorphisms_for(surface, ctx)
    hits: dict[int, list[str]] = {i: [] for i in range(len(representatives))}
    for rep in published:
        found = [i for i, q in enumerate(representatives) if orbits_equivalent(surface, rep.point, q, autos)]
        if len(found) == 1:
            report.matched[rep.label] = found[0]
            hits[found[0]].append(rep.label)
        else:
            report.missing.append(rep.label)
    for i, labels in hits.items():
        if len(labels) != 1:
            report.extra.append(representatives[i].text())
    logger.info(
        "%s d=%d: %d/%d published representatives matched", surface, d, len(report.matched), len(published)
    )
    return report

# ===== 전수 대조 =====

def brute_force_class_count(surface: str, d: int) -> int:
    """후보 필터 없이 P²(F) 전체에서 분류한 궤도류 개수.

    Raises:
        UnsupportedPair: P2 d=3, D6 d=2,3 이외
    """
    key = BRUTE_FORCE_FIELDS.get((surface, d))
    if key is None:
        raise UnsupportedPair(f"no brute-force oracle for {surface} with d={d}")
    ctx = registry_field(key)
    everything = [("P2(F)", p) for p in points_of_p2(ctx)]
    survivors = one_per_orbit(surface, filter_orbit_size(surface, d, everything))
    positioned = filter_general_position(surface, survivors)
    return len(dedup_by_automorphisms(surface, positioned))

# ===== 크기 5 궤도와 5+2 Geiser =====

def _std_orbits(points: Iterable[ProjPoint], d: int) -> list[GOrbit]:
    model = frob_model(FrobTag.StdP2)
    seen: set[PointKey] = set()
    out = []
    for p in points:
        if point_key(p) in seen:
            continue
        o = orbit(model, p)
        seen |= orbit_key(o)
        if o.size == d:
            out.append(o)
    return out


def size5_orbit_summary() -> dict[str, int | bool]:
    """P²(F₃₂)의 크기 5 궤도 집계."""
    ctx = registry_field("F32")
    orbits = _std_orbits(points_of_p2(ctx), 5)
    general = [o for o in orbits if general_position_p2(o.points).ok]
    images = set()
    if general:
        base = general[0]
        for g in pgl3_f2().elements:
            images.add(frozenset(point_key(g.act(q)) for q in base.points))
    single = all(orbit_key(o) in images for o in general)
    return {
        "orbits": len(orbits),
        "no_three_collinear": len(general),
        "single_class": bool(general) and single,
        "irreducible_quintics": len(irreducible_polynomials(5)),
    }


def unique_size5_check() -> bool:
    """세 점이 공선이 아닌 크기 5 궤도가 PGL₃(F₂) 아래 하나뿐인지."""
    summary = size5_orbit_summary()
    return bool(summary["single_class"]) and summary["irreducible_quintics"] == 6


def geiser_pairs() -> list[tuple[GOrbit, GOrbit]]:
    """(크기 5 궤도, 크기 2 궤도) 쌍의 대표. 크기 5 궤도는 [1:a:a²]로 고정합니다.

    합집합 7점이 general position인 쌍만 남기고, 크기 5 궤도를 지나는 conic
    C: y²+xz = 0 의 자기동형 Aut(C) ⊂ PGL₃(F₂) (위수 6)로 중복을 제거합니다.
    크기 5 궤도 자체의 안정자는 자명하므로 중복 제거에 쓸 수 없습니다.
    """
    ctx = registry_field(GEISER_FIELD)
    a = embed_with_min_poly(ctx, QUINTIC_MODULUS).value
    five = orbit(frob_model(FrobTag.StdP2), normalize_ints("P2", (1, a, ctx.square(a)), ctx))

    f4_points = f4_points_of_p2(ctx)
    twos = _std_orbits(f4_points, 2)
    logger.debug("P2(F4) has %d orbits of size 2", len(twos))

    stabilizer = conic_stabilizer(f4_points)
    classes: list[tuple[GOrbit, GOrbit]] = []
    seen: set[frozenset[PointKey]] = set()
    for two in twos:
        if orbit_key(two) in seen:
            continue
        if not general_position_p2(five.points + two.points).ok:
            continue
        classes.append((five, two))
        for g in stabilizer:
            seen.add(frozenset(point_key(g.act(q)) for q in two.points))
    return classes


def f4_points_of_p2(ctx: FieldCtx) -> list[ProjPoint]:
    """F₄를 포함하는 ctx 안에서 본 P²(F₄)의 21개 점."""
    w = embed_with_min_poly(ctx, [1, 1, 1]).value
    f4 = [0, 1, w, ctx.square(w)]
    return [
        normalize_ints("P2", (x, y, z), ctx)
        for x in f4 for y in f4 for z in f4 if x or y or z
    ]


def on_geiser_conic(p: ProjPoint) -> bool:
    """y²+xz = 0 인지. 크기 5 궤도 [1:a:a²]는 모두 이 conic 위에 있습니다."""
    x, y, z = p.coords
    return p.ctx.square(y) ^ p.ctx.mul(x, z) == 0


def conic_stabilizer(points: Sequence[ProjPoint]) -> list[PointAction]:
    """conic y²+xz = 0 을 보존하는 PGL₃(F₂) 원소.

    points에는 C(F₄)의 다섯 점이 들어 있어야 합니다. 세 점이 공선이 아닌 다섯 점이
    conic을 결정하므로, 그 집합을 보존하는 것과 C를 보존하는 것은 같습니다.
    """
    on_conic = frozenset(point_key(p) for p in points if on_geiser_conic(p))
    return [
        g for g in pgl3_f2().elements
        if frozenset(point_key(g.act(p)) for p in points if on_geiser_conic(p)) == on_conic
    ]


def size2_orbits_in_p2_f4() -> int:
    ctx = registry_field("F4")
    return len(_std_orbits(points_of_p2(ctx), 2))


def geiser_pair_classes() -> int:
    """5+2 Geiser 궤도 쌍의 류 개수."""
    return len(geiser_pairs())

# ===== 생성원 목록 =====

def generator_inventory(
    classes: dict[tuple[str, int], Sequence[OrbitClass]],
    geiser: Sequence[tuple[GOrbit, GOrbit]] | None = None,
) -> Inventory:
    """분류 결과로 생성원 목록을 구성합니다.

    Args:
        classes: (surface, d) → 궤도류. INVENTORY_ROWS의 모든 조합이 있어야 합니다.
        geiser: 5+2 쌍. None이면 geiser_pairs()로 계산합니다.
    """
    geiser = geiser_pairs() if geiser is None else geiser
    rows = [InventoryRow(table="P2", kind="automorphism", count=INVENTORY_AUTOMORPHISMS)]
    for table, pairs in INVENTORY_ROWS.items():
        for pair in pairs:
            found = classes[pair]
            rows.append(InventoryRow(
                table=table,
                kind="orbit",
                size=pair[1],
                count=len(found),
                representatives=[c.orbit for c in found],
            ))
        if table == "P2":
            rows.append(InventoryRow(
                table="P2",
                kind="geiser_5_plus_2",
                size=7,
                count=len(geiser),
                representatives=[[q.text() for q in five.points + two.points] for five, two in geiser],
            ))
    totals: dict[str, int] = {}
    for row in rows:
        totals[row.table] = totals.get(row.table, 0) + row.count
    total = sum(totals.values())
    if total != INVENTORY_TOTAL:
        logger.warning("generator inventory totals %d, expected %d", total, INVENTORY_TOTAL)
    return Inventory(rows=rows, table_totals=totals, total=total)

