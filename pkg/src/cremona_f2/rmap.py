"""동차 다항식 tuple로 주어진 유리사상과 그 검증 연산.

유리사상의 동등성은 GCD 약분 대신 성분 간 2×2 cross product가 모두 0인지로
판정합니다. P¹×P¹이 target이면 인수별로 cross product를 취합니다.
affine 매개변수 t를 갖는 공간 (P2T, P1T)은 fiber product 항등식에 씁니다.

주요 구성 요소:
- SpaceSpec / SPACES: 좌표 개수, 정규화 인수, 매개변수 변수
- RatMap, Fibration, RationalFunction1V
- map_compose, maps_equal_rational, maps_equal_modulo
- is_involution, preserves_fibration, semi_preserves, commutes_with_frob
- jonquieres_gp
"""

import logging
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

from cremona_f2.errors import IndeterminatePoint, SpaceMismatch, ZeroFunction, ZeroVector
from cremona_f2.ff import FieldCtx, gf2, gf2x_degree, gf2x_divmod, gf2x_gcd, gf2x_mul
from cremona_f2.frob import FrobModel
from cremona_f2.geom import ProjPoint, normalize_ints
from cremona_f2.poly import MPoly

logger = logging.getLogger(__name__)

# ===== 공간 =====

class SpaceSpec(NamedTuple):
    """유리사상의 정의역/공역 서술.

    nvars는 다항식환의 변수 개수, factors는 사영 좌표 묶음,
    param은 그대로 전달되는 affine 매개변수 t의 변수 index입니다.
    """

    name: str
    nvars: int
    factors: tuple[tuple[int, int], ...]
    param: Optional[int] = None
    names: tuple[str, ...] = ()

    @property
    def ncoords(self) -> int:
        return self.factors[-1][1]


SPACES: dict[str, SpaceSpec] = {
    "P1": SpaceSpec("P1", 2, ((0, 2),), None, ("x", "y")),
    "P2": SpaceSpec("P2", 3, ((0, 3),), None, ("x", "y", "z")),
    "P3": SpaceSpec("P3", 4, ((0, 4),), None, ("x0", "x1", "x2", "x3")),
    "P1xP1": SpaceSpec("P1xP1", 4, ((0, 2), (2, 4)), None, ("x0", "x1", "y0", "y1")),
    "P2T": SpaceSpec("P2T", 4, ((0, 3),), 3, ("x", "y", "z", "t")),
    "P1T": SpaceSpec("P1T", 3, ((0, 2),), 2, ("u", "v", "t")),
}


def space(name: str) -> SpaceSpec:
    if name not in SPACES:
        raise SpaceMismatch(f"unknown space {name!r}")
    return SPACES[name]

# ===== RATMAP =====

class RatMap:
    """동차 다항식 성분으로 주어진 유리사상.

    성분은 source 공간의 변수로 쓰인 다항식이며 target 좌표마다 하나씩 있습니다.
    target이 매개변수를 가지면 t는 성분에 포함하지 않고 그대로 전달합니다.
    """

    __slots__ = ("source", "target", "components", "name")

    def __init__(self, source: str, target: str, components: Sequence[MPoly], name: str = ""):
        src, tgt = space(source), space(target)
        if len(components) != tgt.ncoords:
            raise SpaceMismatch(f"{target} needs {tgt.ncoords} components, got {len(components)}")
        for c in components:
            if c.nvars != src.nvars:
                raise SpaceMismatch(f"component over {c.nvars} variables, {source} has {src.nvars}")
        self.source = source
        self.target = target
        self.components = tuple(components)
        self.name = name

    @property
    def ctx(self) -> FieldCtx:
        return self.components[0].ctx

    def graded_vars(self) -> list[int]:
        src = space(self.source)
        return [i for i in range(src.nvars) if i != src.param]

    def degrees(self) -> list[set[int]]:
        """Target 인수별 성분 차수 집합 (동차성 검사용)."""
        tgt = space(self.target)
        graded = self.graded_vars()
        out = []
        for start, stop in tgt.factors:
            degs: set[int] = set()
            for c in self.components[start:stop]:
                if not c.is_zero():
                    degs |= c.degree_in(graded)
            out.append(degs)
        return out

    def is_well_formed(self) -> bool:
        """인수마다 성분이 같은 차수로 동차이고 모두 0은 아닌지."""
        return all(len(d) == 1 for d in self.degrees())

    def over(self, ctx: FieldCtx) -> "RatMap":
        """GF(2) 계수 사상을 다른 체에서 쓰도록 옮깁니다."""
        if ctx == self.ctx:
            return self
        return RatMap(self.source, self.target, [c.over(ctx) for c in self.components], self.name)

    def __call__(self, p: ProjPoint) -> ProjPoint:
        """점에서 평가합니다.

        Raises:
            IndeterminatePoint: 어떤 인수의 성분이 모두 0인 경우 (base locus)
        """
        comps = self.components if p.ctx == self.ctx else self.over(p.ctx).components
        values = [c.eval(p.coords) for c in comps]
        try:
            return normalize_ints(self.target, values, p.ctx)
        except ZeroVector as exc:
            raise IndeterminatePoint(f"{self.name or 'map'} is not defined at {p.text()}") from exc

    def to_text(self) -> str:
        names = space(self.source).names
        parts = [c.to_text(names) for c in self.components]
        tgt = space(self.target)
        groups = ["[" + " : ".join(parts[a:b]) + "]" for a, b in tgt.factors]
        return groups[0] if len(groups) == 1 else "(" + ", ".join(groups) + ")"

    def __repr__(self) -> str:
        return f"RatMap({self.name or '?'}: {self.source} -> {self.target})"


def identity(space_name: str, ctx: FieldCtx | None = None) -> RatMap:
    """항등사상."""
    spec = space(space_name)
    gens = MPoly.gens(ctx or gf2(), spec.nvars)
    comps = [gens[i] for i in range(spec.nvars) if i != spec.param]
    return RatMap(space_name, space_name, comps, "id")


def linear_map(ctx: FieldCtx, matrix: Sequence[Sequence[int]], name: str = "") -> RatMap:
    """3×3 행렬 (열벡터 작용) 로 P² 자기사상을 만듭니다."""
    n = len(matrix)
    space_name = {3: "P2", 4: "P3"}[n]
    gens = MPoly.gens(ctx, n)
    comps = []
    for row in matrix:
        comp = MPoly.zero(ctx, n)
        for c, g in zip(row, gens):
            if c:
                comp = comp + g.scale(c)
        comps.append(comp)
    return RatMap(space_name, space_name, comps, name)


def _unify(g: RatMap, f: RatMap) -> tuple[RatMap, RatMap]:
    if g.ctx == f.ctx:
        return g, f
    if all(c.is_gf2() for c in g.components):
        return g.over(f.ctx), f
    if all(c.is_gf2() for c in f.components):
        return g, f.over(g.ctx)
    raise SpaceMismatch(f"maps over {g.ctx.name} and {f.ctx.name}")


def map_compose(g: RatMap, f: RatMap) -> RatMap:
    """g∘f. 약분하지 않습니다.

    Raises:
        SpaceMismatch: f의 target과 g의 source가 다른 경우
    """
    if f.target != g.source:
        raise SpaceMismatch(f"cannot compose {g.source} <- {f.target}")
    g, f = _unify(g, f)
    subs = list(f.components)
    tgt = space(f.target)
    if tgt.param is not None:
        src = space(f.source)
        if src.param is None:
            raise SpaceMismatch(f"{f.source} has no parameter to pass to {f.target}")
        subs.insert(tgt.param, MPoly.var(f.ctx, src.nvars, src.param))
    comps = [c.compose(subs) for c in g.components]
    name = f"{g.name}∘{f.name}" if g.name and f.name else ""
    return RatMap(f.source, g.target, comps, name)


def compose_all(*maps: RatMap) -> RatMap:
    """compose_all(f₁, f₂, ..., fₖ) = f₁∘f₂∘...∘fₖ."""
    result = maps[-1]
    for m in reversed(maps[:-1]):
        result = map_compose(m, result)
    return result


def _cross_products(f: RatMap, g: RatMap) -> list[MPoly]:
    tgt = space(f.target)
    out = []
    for start, stop in tgt.factors:
        for i, j in combinations(range(start, stop), 2):
            out.append(f.components[i] * g.components[j] + f.components[j] * g.components[i])
    return out


def maps_equal_rational(f: RatMap, g: RatMap) -> bool:
    """모든 i<j에 대해 fᵢgⱼ − fⱼgᵢ = 0이면 같은 유리사상입니다."""
    if f.source != g.source or f.target != g.target:
        return False
    f, g = _unify(f, g)
    return all(cp.is_zero() for cp in _cross_products(f, g))


def maps_equal_modulo(f: RatMap, g: RatMap, relation: MPoly) -> bool:
    """Cross product가 모두 relation으로 나누어떨어지는지 (relation = 0 위에서 같은 사상)."""
    if f.source != g.source or f.target != g.target:
        return False
    f, g = _unify(f, g)
    relation = relation if relation.ctx == f.ctx else relation.over(f.ctx)
    return all((cp % relation).is_zero() for cp in _cross_products(f, g))


def is_involution(f: RatMap) -> bool:
    """f∘f = id (유리사상으로서)."""
    if f.source != f.target:
        return False
    return maps_equal_rational(map_compose(f, f), identity(f.source, f.ctx))

# ===== FIBRATION =====

class Fibration(NamedTuple):
    """P¹로 가는 사상 [first : second]."""

    tag: str
    first: MPoly
    second: MPoly

    def over(self, ctx: FieldCtx) -> "Fibration":
        return Fibration(self.tag, self.first.over(ctx), self.second.over(ctx))


def fibration(tag: str, ctx: FieldCtx | None = None) -> Fibration:
    """π₁ = [y:z], π₂ = [y²+xy : x²+xz+z²], π₄ = [y²+xz : x²+xy+z²]."""
    ctx = ctx or gf2()
    x, y, z = MPoly.gens(ctx, 3)
    if tag == "pi1":
        return Fibration(tag, y, z)
    if tag == "pi2":
        return Fibration(tag, y * y + x * y, x * x + x * z + z * z)
    if tag == "pi4":
        return Fibration(tag, y * y + x * z, x * x + x * y + z * z)
    raise ValueError(f"unknown fibration {tag!r}")


def _pull_back(pi: Fibration, f: RatMap) -> tuple[MPoly, MPoly]:
    subs = list(f.components)
    return pi.first.compose(subs), pi.second.compose(subs)


def preserves_fibration(f: RatMap, pi: Fibration) -> bool:
    """π∘f = π: (π₁∘f)·π₂ − (π₂∘f)·π₁ = 0."""
    if f.source != "P2" or f.target != "P2":
        return False
    pi = pi if pi.first.ctx == f.ctx else pi.over(f.ctx)
    a, b = _pull_back(pi, f)
    return (a * pi.second + b * pi.first).is_zero()


def semi_preserves(f: RatMap, pi: Fibration, iota: Sequence[Sequence[int]]) -> bool:
    """π∘f = ι∘π. ι는 [s:t]에 작용하는 2×2 행렬입니다."""
    if f.source != "P2" or f.target != "P2":
        return False
    pi = pi if pi.first.ctx == f.ctx else pi.over(f.ctx)
    a, b = _pull_back(pi, f)
    s = pi.first.scale(iota[0][0]) + pi.second.scale(iota[0][1])
    t = pi.first.scale(iota[1][0]) + pi.second.scale(iota[1][1])
    return (a * t + b * s).is_zero()


def commutes_with_frob(f: RatMap, model: FrobModel) -> bool:
    """점 사상으로서 Frob~∘f = f∘Frob~ 인지 판정합니다.

    모델 성분은 좌표를 제곱하므로, 다항식 합성 Frob~∘f에서 f의 계수도
    함께 제곱됩니다. 따라서 계수가 GF(2) 밖인 f도 이 한 식으로 판정됩니다.
    """
    tw = RatMap(model.space, model.space, model.components_over(f.ctx), model.tag.value)
    if f.source != tw.source or f.target != tw.target:
        return False
    return maps_equal_rational(map_compose(tw, f), map_compose(f, tw))

# ===== F₂(t) =====

class RationalFunction1V:
    """GF(2)[t] bitmask 분자/분모의 유리함수. 항상 기약분수로 저장합니다."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        g = gf2x_gcd(num, den) if num else den
        self.num = gf2x_divmod(num, g)[0]
        self.den = gf2x_divmod(den, g)[0]

    @classmethod
    def t(cls) -> "RationalFunction1V":
        return cls(0b10)

    @classmethod
    def const(cls, c: int) -> "RationalFunction1V":
        return cls(c & 1)

    def is_zero(self) -> bool:
        return self.num == 0

    def __add__(self, other: "RationalFunction1V") -> "RationalFunction1V":
        return RationalFunction1V(
            gf2x_mul(self.num, other.den) ^ gf2x_mul(other.num, self.den),
            gf2x_mul(self.den, other.den),
        )

    __sub__ = __add__

    def __mul__(self, other: "RationalFunction1V") -> "RationalFunction1V":
        return RationalFunction1V(gf2x_mul(self.num, other.num), gf2x_mul(self.den, other.den))

    def inverse(self) -> "RationalFunction1V":
        if self.num == 0:
            raise ZeroFunction("inverse of the zero function")
        return RationalFunction1V(self.den, self.num)

    def __truediv__(self, other: "RationalFunction1V") -> "RationalFunction1V":
        return self * other.inverse()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalFunction1V) and (self.num, self.den) == (other.num, other.den)

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def degree(self) -> int:
        """max(deg 분자, deg 분모)."""
        return max(gf2x_degree(self.num), gf2x_degree(self.den))

    def __repr__(self) -> str:
        return f"({_gf2x_text(self.num)})/({_gf2x_text(self.den)})"


def _gf2x_text(v: int) -> str:
    if v == 0:
        return "0"
    terms = []
    for i in range(v.bit_length() - 1, -1, -1):
        if v >> i & 1:
            terms.append("1" if i == 0 else ("t" if i == 1 else f"t^{i}"))
    return "+".join(terms)


def homogenize(value: int, degree: int, upper: MPoly, lower: MPoly) -> MPoly:
    """GF(2)[t] 다항식에 t = upper/lower를 넣고 lower^degree를 곱합니다."""
    ctx, n = upper.ctx, upper.nvars
    result = MPoly.zero(ctx, n)
    upper_pow = [MPoly.constant(ctx, n, 1)]
    lower_pow = [MPoly.constant(ctx, n, 1)]
    for _ in range(degree):
        upper_pow.append(upper_pow[-1] * upper)
        lower_pow.append(lower_pow[-1] * lower)
    for i in range(value.bit_length()):
        if value >> i & 1:
            result = result + upper_pow[i] * lower_pow[degree - i]
    return result


def jonquieres_gp(p: RationalFunction1V, ctx: FieldCtx | None = None) -> RatMap:
    """g_p: [x:y:z] ↦ [x·Q : y·P : z·P], P/Q는 p(y/z)를 공통 차수로 동차화한 것.

    Raises:
        ZeroFunction: p = 0인 경우
    """
    if p.is_zero():
        raise ZeroFunction("g_p needs a nonzero function")
    ctx = ctx or gf2()
    x, y, z = MPoly.gens(ctx, 3)
    degree = p.degree()
    top = homogenize(p.num, degree, y, z)
    bottom = homogenize(p.den, degree, y, z)
    return RatMap("P2", "P2", [x * bottom, y * top, z * top], f"g_{p!r}")
