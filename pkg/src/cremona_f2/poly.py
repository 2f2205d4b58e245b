"""FieldCtx 위의 희소 다변수 다항식.

지수 tuple은 변수당 16 bit씩 하나의 정수로 pack합니다. 첫 변수가 가장 높은 bit를
차지하므로, 같은 총차수에서는 pack된 정수의 대소가 곧 x > y > z 사전식 순서입니다.
계수는 FieldCtx의 정수 표현이며 0 계수는 저장하지 않습니다.

곡선의 정의식, 선형계, 유리사상의 성분이 모두 이 타입 위에서 계산됩니다.
"""

import logging
import re
from typing import Callable, Iterable, Sequence

from cremona_f2.errors import ArityMismatch, MixedContexts, ParseError, ZeroPolynomial
from cremona_f2.ff import FieldCtx, FieldElem

logger = logging.getLogger(__name__)

# ===== 설정 =====

# 변수 하나당 지수 bit 수
EXP_BITS = 16
EXP_MASK = (1 << EXP_BITS) - 1

# 변수 개수별 기본 변수 이름
DEFAULT_NAMES: dict[int, tuple[str, ...]] = {
    1: ("t",),
    2: ("x", "y"),
    3: ("x", "y", "z"),
    4: ("x0", "x1", "y0", "y1"),
    5: ("x0", "x1", "x2", "x3", "t"),
}

# ===== 지수 PACKING =====

def pack(exps: Sequence[int]) -> int:
    """지수 tuple을 정수 key로 pack합니다."""
    key = 0
    for e in exps:
        key = (key << EXP_BITS) | e
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    """정수 key를 지수 tuple로 되돌립니다."""
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & EXP_MASK
        key >>= EXP_BITS
    return tuple(out)


def key_degree(key: int) -> int:
    """Key의 총차수."""
    total = 0
    while key:
        total += key & EXP_MASK
        key >>= EXP_BITS
    return total


def grlex_key(key: int) -> tuple[int, int]:
    """Graded-lex 정렬 key (큰 값이 앞)."""
    return key_degree(key), key

# ===== MPOLY =====

class MPoly:
    """희소 다변수 다항식. 생성 후 변경하지 않습니다."""

    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, ctx: FieldCtx, nvars: int, terms: dict[int, int] | None = None):
        self.ctx = ctx
        self.nvars = nvars
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # ----- 생성자 -----

    @classmethod
    def _raw(cls, ctx: FieldCtx, nvars: int, terms: dict[int, int]) -> "MPoly":
        p = cls.__new__(cls)
        p.ctx = ctx
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, ctx: FieldCtx, nvars: int) -> "MPoly":
        return cls._raw(ctx, nvars, {})

    @classmethod
    def constant(cls, ctx: FieldCtx, nvars: int, c: int = 1) -> "MPoly":
        return cls._raw(ctx, nvars, {0: c} if c else {})

    @classmethod
    def monomial(cls, ctx: FieldCtx, exps: Sequence[int], c: int = 1) -> "MPoly":
        return cls._raw(ctx, len(exps), {pack(exps): c} if c else {})

    @classmethod
    def var(cls, ctx: FieldCtx, nvars: int, index: int) -> "MPoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls.monomial(ctx, exps)

    @classmethod
    def gens(cls, ctx: FieldCtx, nvars: int) -> tuple["MPoly", ...]:
        """변수 다항식 전체."""
        return tuple(cls.var(ctx, nvars, i) for i in range(nvars))

    # ----- 비교 -----

    def _check(self, other: "MPoly") -> None:
        if other.ctx != self.ctx or other.nvars != self.nvars:
            raise MixedContexts(
                f"({self.ctx.name}, {self.nvars} vars) vs ({other.ctx.name}, {other.nvars} vars)"
            )

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MPoly):
            return self.ctx == other.ctx and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.modulus, self.nvars, frozenset(self.terms.items())))

    # ----- 산술 -----

    def _lift(self, other: object) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise MixedContexts(f"{self.ctx.name} vs {other.ctx.name}")
            return MPoly.constant(self.ctx, self.nvars, other.value)
        if isinstance(other, int) and 0 <= other < self.ctx.order:
            return MPoly.constant(self.ctx, self.nvars, other)
        raise TypeError(f"cannot combine MPoly with {type(other).__name__}")

    def __add__(self, other: object) -> "MPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) ^ c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MPoly._raw(self.ctx, self.nvars, out)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self) -> "MPoly":
        return self

    def __mul__(self, other: object) -> "MPoly":
        other = self._lift(other)
        if not self.terms or not other.terms:
            return MPoly.zero(self.ctx, self.nvars)
        mul = self.ctx.mul
        out: dict[int, int] = {}
        get = out.get
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                if c1 == 1:
                    c = c2
                elif c2 == 1:
                    c = c1
                else:
                    c = mul(c1, c2)
                k = k1 + k2
                out[k] = get(k, 0) ^ c
        return MPoly._raw(self.ctx, self.nvars, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def scale(self, c: int) -> "MPoly":
        """상수배."""
        if c == 0:
            return MPoly.zero(self.ctx, self.nvars)
        if c == 1:
            return self
        mul = self.ctx.mul
        return MPoly._raw(self.ctx, self.nvars, {k: mul(v, c) for k, v in self.terms.items()})

    def square(self) -> "MPoly":
        """제곱. 표수 2이므로 각 항을 제곱하면 됩니다."""
        sq = self.ctx.square
        return MPoly._raw(self.ctx, self.nvars, {2 * k: sq(c) for k, c in self.terms.items()})

    def __pow__(self, e: int) -> "MPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = MPoly.constant(self.ctx, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.square()
        return result

    # ----- 차수 -----

    def exponents(self) -> list[tuple[int, ...]]:
        """Graded-lex 내림차순 지수 목록."""
        return [unpack(k, self.nvars) for k in sorted(self.terms, key=grlex_key, reverse=True)]

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(key_degree(k) for k in self.terms)

    def degree_in(self, variables: Iterable[int]) -> set[int]:
        """주어진 변수들에 대한 차수의 집합 (동차성 판정용)."""
        variables = tuple(variables)
        return {sum(unpack(k, self.nvars)[i] for i in variables) for k in self.terms}

    def is_homogeneous(self, variables: Iterable[int] | None = None) -> bool:
        if not self.terms:
            return True
        variables = range(self.nvars) if variables is None else variables
        return len(self.degree_in(variables)) == 1

    def bidegree(self, split: int | None = None) -> tuple[int, int] | None:
        """앞 split개 변수와 나머지 변수에 대한 이중차수. 이중동차가 아니면 None."""
        if not self.terms:
            raise ZeroPolynomial("bidegree of the zero polynomial")
        split = self.nvars // 2 if split is None else split
        first = self.degree_in(range(split))
        second = self.degree_in(range(split, self.nvars))
        if len(first) == 1 and len(second) == 1:
            return first.pop(), second.pop()
        return None

    def degree_info(self) -> dict:
        """총차수, 동차성, (4변수일 때) (2,2) 분할 이중차수."""
        info = {
            "total_degree": self.total_degree(),
            "is_homogeneous": self.is_homogeneous(),
            "bidegree": None,
        }
        if self.nvars == 4:
            info["bidegree"] = self.bidegree(2)
        return info

    # ----- 미분, 대입, 평가 -----

    def partial_derivative(self, var: int) -> "MPoly":
        """형식적 편미분. 표수 2이므로 짝수 지수 항은 사라집니다."""
        if not 0 <= var < self.nvars:
            raise ArityMismatch(f"variable index {var} out of range")
        shift = EXP_BITS * (self.nvars - 1 - var)
        out = {}
        for k, c in self.terms.items():
            e = (k >> shift) & EXP_MASK
            if e & 1:
                out[k - (1 << shift)] = c
        return MPoly._raw(self.ctx, self.nvars, out)

    def eval(self, point: Sequence[int]) -> int:
        """정수 표현 좌표에서 값을 계산합니다."""
        n = self.nvars
        if len(point) != n:
            raise ArityMismatch(f"expected {n} coordinates, got {len(point)}")
        ctx = self.ctx
        mul = ctx.mul
        caches: list[dict[int, int]] = [{0: 1, 1: p} for p in point]
        total = 0
        for key, c in self.terms.items():
            v = c
            k = key
            for i in range(n - 1, -1, -1):
                e = k & EXP_MASK
                k >>= EXP_BITS
                if e:
                    cache = caches[i]
                    pw = cache.get(e)
                    if pw is None:
                        pw = ctx.pow(point[i], e)
                        cache[e] = pw
                    v = mul(v, pw)
            total ^= v
        return total

    def compose(self, subs: Sequence["MPoly"]) -> "MPoly":
        """변수 i에 subs[i]를 대입하여 완전히 전개합니다.

        같은 앞쪽 지수 prefix를 공유하는 항은 부분곱을 재사용합니다.
        """
        if len(subs) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} substitutions, got {len(subs)}")
        target = subs[0]
        for s in subs:
            if s.ctx != self.ctx or s.nvars != target.nvars:
                raise MixedContexts("substitutions must share field and arity")
        n = self.nvars
        one = MPoly.constant(self.ctx, target.nvars, 1)
        powers: list[dict[int, MPoly]] = [{0: one, 1: s} for s in subs]

        def power(i: int, e: int) -> MPoly:
            cache = powers[i]
            pw = cache.get(e)
            if pw is None:
                half = power(i, e // 2).square()
                pw = half * subs[i] if e & 1 else half
                cache[e] = pw
            return pw

        prefixes: dict[tuple[int, ...], MPoly] = {(): one}
        acc: dict[int, int] = {}
        mul = self.ctx.mul
        for key, c in self.terms.items():
            exps = unpack(key, n)
            prefix: tuple[int, ...] = ()
            prod = one
            for i in range(n):
                prefix = prefix + (exps[i],)
                cached = prefixes.get(prefix)
                if cached is None:
                    cached = prod if exps[i] == 0 else prod * power(i, exps[i])
                    prefixes[prefix] = cached
                prod = cached
            for k, v in prod.terms.items():
                acc[k] = acc.get(k, 0) ^ (v if c == 1 else mul(v, c))
        return MPoly._raw(self.ctx, target.nvars, {k: v for k, v in acc.items() if v})

    # ----- 계수 변환 -----

    def coeff_frobenius(self, k: int = 1) -> "MPoly":
        """모든 계수에 u ↦ u^(2^k)를 적용합니다 (f^σ)."""
        frob = self.ctx.frob
        return MPoly._raw(self.ctx, self.nvars, {key: frob(c, k) for key, c in self.terms.items()})

    def change_field(self, ctx: FieldCtx, embed: Callable[[int], int]) -> "MPoly":
        """계수를 embed로 옮겨 다른 체 위의 다항식으로 만듭니다."""
        return MPoly(ctx, self.nvars, {k: embed(c) for k, c in self.terms.items()})

    def over(self, ctx: FieldCtx) -> "MPoly":
        """GF(2) 계수 다항식을 다른 체 위의 같은 다항식으로 봅니다."""
        if ctx == self.ctx:
            return self
        if not self.is_gf2():
            raise MixedContexts(f"coefficients of {self.ctx.name} polynomial are not in GF(2)")
        return MPoly._raw(ctx, self.nvars, dict(self.terms))

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(pack(exps), 0)

    def is_gf2(self) -> bool:
        """모든 계수가 GF(2)에 속하는지 여부."""
        return all(c == 1 for c in self.terms.values())

    # ----- 나눗셈 -----

    def leading(self) -> tuple[int, int]:
        """Graded-lex 최고차 항 (key, 계수)."""
        if not self.terms:
            raise ZeroPolynomial("leading term of the zero polynomial")
        key = max(self.terms, key=grlex_key)
        return key, self.terms[key]

    def divmod(self, divisor: "MPoly") -> tuple["MPoly", "MPoly"]:
        """한 다항식에 의한 graded-lex 나눗셈.

        단일 제수는 그 자체로 Gröbner basis이므로 나머지가 0인 것과
        나누어떨어지는 것이 동치입니다.
        """
        self._check(divisor)
        lead_key, lead_c = divisor.leading()
        lead_exps = unpack(lead_key, self.nvars)
        lead_inv = self.ctx.inv(lead_c)
        mul = self.ctx.mul
        rest = dict(self.terms)
        quotient: dict[int, int] = {}
        remainder: dict[int, int] = {}
        while rest:
            key = max(rest, key=grlex_key)
            c = rest[key]
            exps = unpack(key, self.nvars)
            if all(a >= b for a, b in zip(exps, lead_exps)):
                shift = key - lead_key
                factor = mul(c, lead_inv)
                quotient[shift] = quotient.get(shift, 0) ^ factor
                for dk, dc in divisor.terms.items():
                    k = dk + shift
                    v = rest.get(k, 0) ^ mul(dc, factor)
                    if v:
                        rest[k] = v
                    else:
                        rest.pop(k, None)
            else:
                remainder[key] = c
                del rest[key]
        return (
            MPoly._raw(self.ctx, self.nvars, {k: v for k, v in quotient.items() if v}),
            MPoly._raw(self.ctx, self.nvars, remainder),
        )

    def __mod__(self, divisor: "MPoly") -> "MPoly":
        return self.divmod(divisor)[1]

    def exact_div(self, divisor: "MPoly") -> "MPoly | None":
        """나누어떨어지면 몫, 아니면 None."""
        q, r = self.divmod(divisor)
        return q if r.is_zero() else None

    # ----- 텍스트 -----

    def to_text(self, names: Sequence[str] | None = None) -> str:
        """Graded-lex 순서의 canonical 텍스트."""
        names = names or DEFAULT_NAMES[self.nvars]
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[key]
            factors = []
            for name, e in zip(names, unpack(key, self.nvars)):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if c != 1 or not factors:
                factors.insert(0, self.ctx.text(c))
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return self.to_text()

# ===== 모듈 함수 =====

_FACTOR = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def parse_poly(text: str, ctx: FieldCtx, names: Sequence[str]) -> MPoly:
    """to_text 형식의 다항식을 해석합니다.

    변수 이름이 체 원소 기호 ("a", "g")보다 우선합니다.

    Raises:
        ParseError: 해석할 수 없는 인수가 있는 경우
    """
    nvars = len(names)
    index = {name: i for i, name in enumerate(names)}
    result = MPoly.zero(ctx, nvars)
    text = text.strip()
    if text == "0":
        return result
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ParseError(f"empty term in {text!r}")
        exps = [0] * nvars
        coeff = 1
        for factor in term.split("*"):
            factor = factor.strip()
            match = _FACTOR.match(factor)
            if factor in ("0", "1"):
                coeff = ctx.mul(coeff, int(factor))
            elif match and match.group(1) in index:
                exps[index[match.group(1)]] += int(match.group(2) or 1)
            else:
                coeff = ctx.mul(coeff, ctx.parse(factor))
        result = result + MPoly.monomial(ctx, exps, coeff)
    return result


def poly_arith(op: str, p: MPoly, q: MPoly) -> MPoly:
    """덧셈 또는 곱셈."""
    p._check(q)
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p: MPoly, point: Sequence[FieldElem]) -> FieldElem:
    """FieldElem 좌표에서 평가합니다."""
    if len(point) != p.nvars:
        raise ArityMismatch(f"expected {p.nvars} coordinates, got {len(point)}")
    for u in point:
        if u.ctx != p.ctx:
            raise MixedContexts(f"point in {u.ctx.name}, polynomial over {p.ctx.name}")
    return FieldElem(p.ctx, p.eval([u.value for u in point]))


def poly_compose(p: MPoly, subs: Sequence[MPoly]) -> MPoly:
    """대입 후 전개."""
    return p.compose(subs)


def partial_derivative(p: MPoly, var: int) -> MPoly:
    """형식적 편미분."""
    return p.partial_derivative(var)


def degree_info(p: MPoly) -> dict:
    """차수 정보."""
    return p.degree_info()


def poly_divmod(p: MPoly, divisor: MPoly) -> tuple[MPoly, MPoly]:
    """graded-lex 순서의 나눗셈. 나머지가 0이면 divisor가 p를 나눕니다."""
    return p.divmod(divisor)
