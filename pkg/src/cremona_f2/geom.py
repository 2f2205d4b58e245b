"""사영 점, 정규화, 그리고 kernel 차원에 의한 general position 판정.

점 집합 위를 지나는 (이중)차수 곡선의 존재는 평가 행렬과 편미분 행렬을 쌓은
행렬 M의 kernel 차원이 양수인 것과 동치입니다. 이 모듈은 그 행렬을 만들고
정확한 체 연산으로 rank를 계산하며, P²와 P¹×P¹의 del Pezzo 조건을 판정합니다.
"""

import logging
from itertools import combinations
from typing import Iterable, Iterator, Literal, NamedTuple, Optional, Sequence

from pydantic import BaseModel, Field

from cremona_f2.errors import ChartFailure, MixedFields, TooManyPoints, ZeroInverse, ZeroVector
from cremona_f2.ff import FieldCtx, FieldElem
from cremona_f2.poly import grlex_key, pack

logger = logging.getLogger(__name__)

Space = Literal["P1", "P2", "P3", "P1xP1"]

# ===== 설정 =====

# 공간별 좌표 개수
COORD_COUNT: dict[str, int] = {"P1": 2, "P2": 3, "P3": 4, "P1xP1": 4}

# 정규화 단위 (좌표 index 구간)
FACTORS: dict[str, tuple[tuple[int, int], ...]] = {
    "P1": ((0, 2),),
    "P2": ((0, 3),),
    "P3": ((0, 4),),
    "P1xP1": ((0, 2), (2, 4)),
}

# general position 판정 최대 점 개수
MAX_POINTS_P2 = 8
MAX_POINTS_P1XP1 = 7

# ===== 점 =====

class ProjPoint(NamedTuple):
    """정규화된 사영 점. 각 인수의 첫 번째 0이 아닌 좌표가 1입니다.

    좌표는 ctx의 정수 표현이며, (space, coords, ctx) 전체가 dedup key입니다.
    """

    space: str
    coords: tuple[int, ...]
    ctx: FieldCtx

    def elems(self) -> list[FieldElem]:
        return [FieldElem(self.ctx, c) for c in self.coords]

    def text(self) -> str:
        """"[c₀:c₁:c₂]" 또는 "([u₀:u₁],[v₀:v₁])" 형식."""
        t = [self.ctx.text(c) for c in self.coords]
        if self.space == "P1xP1":
            return f"([{t[0]}:{t[1]}],[{t[2]}:{t[3]}])"
        return "[" + ":".join(t) + "]"

    def __repr__(self) -> str:
        return self.text()


def point_text(p: "ProjPoint") -> str:
    return p.text()


def normalize_ints(space: str, coords: Sequence[int], ctx: FieldCtx) -> ProjPoint:
    """정수 좌표를 정규화합니다.

    Raises:
        ZeroVector: 어떤 인수의 좌표가 모두 0인 경우
    """
    out = list(coords)
    if len(out) != COORD_COUNT[space]:
        raise ValueError(f"{space} needs {COORD_COUNT[space]} coordinates, got {len(out)}")
    for start, stop in FACTORS[space]:
        lead = 0
        for i in range(start, stop):
            if out[i]:
                lead = out[i]
                break
        if not lead:
            raise ZeroVector(f"zero factor in {list(coords)}")
        if lead != 1:
            inv = ctx.inv(lead)
            for i in range(start, stop):
                out[i] = ctx.mul(out[i], inv)
    return ProjPoint(space, tuple(out), ctx)


def normalize(raw: Sequence[FieldElem], space: str | None = None) -> ProjPoint:
    """FieldElem 좌표를 정규화합니다. space를 생략하면 좌표 개수로 P1/P2/P3를 고릅니다."""
    if not raw:
        raise ZeroVector("empty coordinate list")
    ctx = raw[0].ctx
    for u in raw:
        if u.ctx != ctx:
            raise MixedFields("coordinates from different fields")
    if space is None:
        space = {2: "P1", 3: "P2", 4: "P3"}[len(raw)]
    return normalize_ints(space, [u.value for u in raw], ctx)


def point(ctx: FieldCtx, *coords: int, space: str = "P2") -> ProjPoint:
    """정수 좌표로 점을 만드는 단축 함수."""
    return normalize_ints(space, coords, ctx)


def points_of_p2(ctx: FieldCtx) -> Iterator[ProjPoint]:
    """P²(ctx)의 모든 점을 정규화된 형태로 나열합니다."""
    q = ctx.order
    for y in range(q):
        for z in range(q):
            yield ProjPoint("P2", (1, y, z), ctx)
    for z in range(q):
        yield ProjPoint("P2", (0, 1, z), ctx)
    yield ProjPoint("P2", (0, 0, 1), ctx)

# ===== 단항식 BASIS =====

def monomial_basis(space: str, degree: int | tuple[int, int]) -> list[tuple[int, ...]]:
    """Graded-lex 내림차순 단항식 지수 목록.

    P²는 (d+2)(d+1)/2개, P¹×P¹의 (a,b)는 (a+1)(b+1)개입니다.
    """
    if space == "P1xP1":
        a, b = degree  # type: ignore[misc]
        exps = [(i, a - i, j, b - j) for i in range(a + 1) for j in range(b + 1)]
    elif space in ("P1", "P2", "P3"):
        d = int(degree)  # type: ignore[arg-type]
        if d < 0:
            raise ValueError("negative degree")
        n = COORD_COUNT[space]
        exps = list(_compositions(d, n))
    else:
        raise ValueError(f"unknown space {space!r}")
    return sorted(exps, key=lambda e: grlex_key(pack(e)), reverse=True)


def _compositions(d: int, n: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest

# ===== 행렬 =====

class PositionMatrix(NamedTuple):
    """평가 행 (block A)과 편미분 행 (block B)을 쌓은 행렬."""

    ctx: FieldCtx
    rows: list[list[int]]
    ncols: int


def _monomial_value(ctx: FieldCtx, exps: Sequence[int], coords: Sequence[int]) -> int:
    v = 1
    for e, c in zip(exps, coords):
        if e:
            if c == 0:
                return 0
            v = ctx.mul(v, ctx.pow(c, e))
    return v


def evaluation_row(p: ProjPoint, basis: Sequence[tuple[int, ...]]) -> list[int]:
    """단항식 basis를 점에서 평가한 행."""
    return [_monomial_value(p.ctx, e, p.coords) for e in basis]


def derivative_row(p: ProjPoint, basis: Sequence[tuple[int, ...]], var: int) -> list[int]:
    """각 단항식의 var 편미분을 점에서 평가한 행 (표수 2)."""
    row = []
    for exps in basis:
        e = exps[var]
        if e & 1:
            reduced = list(exps)
            reduced[var] = e - 1
            row.append(_monomial_value(p.ctx, reduced, p.coords))
        else:
            row.append(0)
    return row


def chart_variables(p: ProjPoint) -> list[int]:
    """Singular 조건에 쓸 affine chart 변수 index.

    P²는 세 좌표 모두, P¹×P¹은 각 인수에서 정규화 좌표 1이 아닌 쪽 변수입니다.
    """
    if p.space == "P2":
        return [0, 1, 2]
    if p.space == "P1xP1":
        out = []
        for start, _ in FACTORS["P1xP1"]:
            if p.coords[start] == 1:
                out.append(start + 1)
            elif p.coords[start + 1] == 1:
                out.append(start)
            else:
                raise ChartFailure(f"no chart for {p.text()}")
        return out
    raise ChartFailure(f"singular conditions are not defined on {p.space}")


def position_matrix(
    points: Sequence[ProjPoint],
    degree: int | tuple[int, int],
    singular_at: Iterable[int] = (),
) -> PositionMatrix:
    """점들을 지나고 singular_at의 점에서 특이인 곡선 조건의 행렬.

    P²에서는 singular 점마다 3개, P¹×P¹에서는 2개의 편미분 행이 추가됩니다.
    """
    if not points:
        raise ValueError("no points")
    space = points[0].space
    ctx = points[0].ctx
    for p in points:
        if p.ctx != ctx or p.space != space:
            raise MixedFields("points must share space and field")
    basis = monomial_basis(space, degree)
    rows = [evaluation_row(p, basis) for p in points]
    for i in singular_at:
        for var in chart_variables(points[i]):
            rows.append(derivative_row(points[i], basis, var))
    return PositionMatrix(ctx, rows, len(basis))


def row_reduce(ctx: FieldCtx, rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form과 pivot 열 목록."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    mul = ctx.mul
    for col in range(ncols):
        pivot = None
        for i in range(r, len(work)):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = ctx.inv(work[r][col])
        if inv != 1:
            work[r] = [mul(v, inv) for v in work[r]]
        prow = work[r]
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                row = work[i]
                work[i] = [a ^ mul(f, b) if b else a for a, b in zip(row, prow)]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(m: PositionMatrix) -> int:
    """정확한 rank."""
    return _rank(m.ctx, m.rows, m.ncols)


def _rank(ctx: FieldCtx, rows: Sequence[Sequence[int]], ncols: int) -> int:
    # rank만 필요한 경우 forward elimination만 수행
    work = [list(r) for r in rows]
    mul = ctx.mul
    r = 0
    nrows = len(work)
    for col in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        prow = work[r]
        inv = ctx.inv(prow[col])
        for i in range(r + 1, nrows):
            f = work[i][col]
            if f:
                f = mul(f, inv)
                row = work[i]
                work[i] = [a ^ mul(f, b) if b else a for a, b in zip(row, prow)]
        r += 1
        if r == nrows:
            break
    return r


def kernel_dimension(m: PositionMatrix) -> int:
    """Nullity = 열 개수 − rank."""
    return m.ncols - rank(m)


def kernel_basis(m: PositionMatrix) -> list[list[int]]:
    """Kernel basis. 자유 열의 오름차순으로 결정적입니다."""
    reduced, pivots = row_reduce(m.ctx, m.rows, m.ncols)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * m.ncols
        v[f] = 1
        for row, pc in zip(reduced, pivots):
            v[pc] = row[f]
        basis.append(v)
    return basis


def matrix_inverse(ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """정사각 행렬의 역행렬 (Gauss–Jordan).

    Raises:
        ZeroInverse: 특이 행렬인 경우
    """
    n = len(rows)
    augmented = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    reduced, pivots = row_reduce(ctx, augmented, 2 * n)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise ZeroInverse("singular matrix")
    return [row[n:] for row in reduced[:n]]


def matmul(ctx: FieldCtx, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    """행렬 곱."""
    mul = ctx.mul
    cols = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc ^= mul(x, y)
            out_row.append(acc)
        out.append(out_row)
    return out


def apply_matrix(ctx: FieldCtx, m: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    """열벡터에 행렬을 곱합니다."""
    mul = ctx.mul
    out = []
    for row in m:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc ^= mul(x, y)
        out.append(acc)
    return out

# ===== GENERAL POSITION =====

class PositionReport(BaseModel):
    """General position 판정 결과."""

    ok: bool = Field(description="모든 조건을 만족하면 True")
    violated: Optional[str] = Field(
        default=None,
        description="위반한 조건 tag (Collinear3, Conic6, NodalCubic8, Ruling2, Curve11_4, Curve21_6, Curve12_6, NodalCurve22_7)",
    )
    witness: Optional[tuple[int, ...]] = Field(
        default=None,
        description="위반을 일으킨 점 index. Nodal 조건은 특이점 index가 맨 앞입니다.",
    )


class _RowCache:
    """점별 평가 행과 편미분 행을 (이중)차수마다 한 번만 계산합니다."""

    def __init__(self, points: Sequence[ProjPoint]):
        self.points = points
        self.ctx = points[0].ctx
        self._eval: dict = {}
        self._deriv: dict = {}
        self._basis: dict = {}

    def basis(self, degree) -> list[tuple[int, ...]]:
        if degree not in self._basis:
            self._basis[degree] = monomial_basis(self.points[0].space, degree)
        return self._basis[degree]

    def eval_rows(self, degree) -> list[list[int]]:
        if degree not in self._eval:
            b = self.basis(degree)
            self._eval[degree] = [evaluation_row(p, b) for p in self.points]
        return self._eval[degree]

    def deriv_rows(self, degree, i: int) -> list[list[int]]:
        key = (degree, i)
        if key not in self._deriv:
            b = self.basis(degree)
            p = self.points[i]
            self._deriv[key] = [derivative_row(p, b, v) for v in chart_variables(p)]
        return self._deriv[key]

    def has_curve(self, degree, subset: Sequence[int], singular: int | None = None) -> bool:
        rows = [self.eval_rows(degree)[i] for i in subset]
        if singular is not None:
            rows = rows + self.deriv_rows(degree, singular)
        ncols = len(self.basis(degree))
        return _rank(self.ctx, rows, ncols) < ncols


def _check_points(points: Sequence[ProjPoint], space: str, limit: int) -> None:
    if len(points) > limit:
        raise TooManyPoints(f"{len(points)} points exceed the limit {limit} on {space}")
    for p in points:
        if p.space != space:
            raise ValueError(f"expected points on {space}, got {p.space}")
        if p.ctx != points[0].ctx:
            raise MixedFields("points must share one field")


def general_position_p2(points: Sequence[ProjPoint]) -> PositionReport:
    """P²의 del Pezzo 조건: 3점 공선 없음, 6점 공원추 없음, 8점이면 한 점에서 특이인 3차곡선 없음."""
    _check_points(points, "P2", MAX_POINTS_P2)
    n = len(points)
    if n < 3:
        return PositionReport(ok=True)
    cache = _RowCache(points)
    for subset in combinations(range(n), 3):
        if cache.has_curve(1, subset):
            return PositionReport(ok=False, violated="Collinear3", witness=subset)
    for subset in combinations(range(n), 6):
        if cache.has_curve(2, subset):
            return PositionReport(ok=False, violated="Conic6", witness=subset)
    if n == 8:
        everything = tuple(range(n))
        for i in range(n):
            if cache.has_curve(3, everything, singular=i):
                witness = (i,) + tuple(j for j in everything if j != i)
                return PositionReport(ok=False, violated="NodalCubic8", witness=witness)
    return PositionReport(ok=True)


def general_position_p1xp1(points: Sequence[ProjPoint]) -> PositionReport:
    """P¹×P¹의 del Pezzo 조건.

    같은 ruling의 2점, (1,1) 곡선 위 4점, (2,1)/(1,2) 곡선 위 6점,
    7점이면 한 점에서 특이인 (2,2) 곡선이 없어야 합니다.
    """
    _check_points(points, "P1xP1", MAX_POINTS_P1XP1)
    n = len(points)
    if n < 2:
        return PositionReport(ok=True)
    cache = _RowCache(points)
    for subset in combinations(range(n), 2):
        if cache.has_curve((1, 0), subset) or cache.has_curve((0, 1), subset):
            return PositionReport(ok=False, violated="Ruling2", witness=subset)
    for subset in combinations(range(n), 4):
        if cache.has_curve((1, 1), subset):
            return PositionReport(ok=False, violated="Curve11_4", witness=subset)
    for subset in combinations(range(n), 6):
        if cache.has_curve((2, 1), subset):
            return PositionReport(ok=False, violated="Curve21_6", witness=subset)
        if cache.has_curve((1, 2), subset):
            return PositionReport(ok=False, violated="Curve12_6", witness=subset)
    if n == 7:
        everything = tuple(range(n))
        for i in range(n):
            if cache.has_curve((2, 2), everything, singular=i):
                witness = (i,) + tuple(j for j in everything if j != i)
                return PositionReport(ok=False, violated="NodalCurve22_7", witness=witness)
    return PositionReport(ok=True)
