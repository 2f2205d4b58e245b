"""이진 확장체 GF(2ⁿ) 산술 (1 ≤ n ≤ 30).

원소는 다항식 basis의 계수를 bit로 담은 정수로 표현합니다 (bit i = xⁱ의 계수).
n ≤ 16인 체는 log/exp table로 곱셈하고, 그보다 큰 체는 carry-less 곱셈 뒤
modulus로 reduction합니다. 내부 알고리즘은 모두 정수 표현 위에서 동작하며,
FieldElem은 공개 API를 위한 얇은 wrapper입니다.

주요 구성 요소:
- GF(2)[x] 다항식 보조 함수 (정수 bitmask 표현)
- FieldCtx: modulus로 고정된 체
- FieldElem: 체의 원소
- modulus registry (files/moduli.json)
"""

import json
import logging
import math
from functools import lru_cache
from typing import Iterator, Literal, Sequence

from cremona_f2.errors import (
    MixedFields,
    NoSuchElement,
    NotADivisor,
    ParseError,
    ReducibleModulus,
    UnsupportedDegree,
    ZeroInverse,
)
from cremona_f2.utils import get_current_dir

logger = logging.getLogger(__name__)

# ===== 설정 =====

# 지원하는 최대 확장 차수
MAX_DEGREE = 30

# 이 차수 이하의 체는 log/exp table을 만든다
TABLE_DEGREE_LIMIT = 16

# modulus registry 파일 (계수는 낮은 차수부터)
REGISTRY_PATH = get_current_dir() / "files" / "moduli.json"

# 2ⁿ−1의 서로 다른 소인수
MERSENNE_PRIME_FACTORS: dict[int, tuple[int, ...]] = {
    1: (),
    2: (3,),
    3: (7,),
    4: (3, 5),
    5: (31,),
    6: (3, 7),
    7: (127,),
    8: (3, 5, 17),
    9: (7, 73),
    10: (3, 11, 31),
    11: (23, 89),
    12: (3, 5, 7, 13),
    13: (8191,),
    14: (3, 43, 127),
    15: (7, 31, 151),
    16: (3, 5, 17, 257),
    17: (131071,),
    18: (3, 7, 19, 73),
    19: (524287,),
    20: (3, 5, 11, 31, 41),
    21: (7, 127, 337),
    22: (3, 23, 89, 683),
    23: (47, 178481),
    24: (3, 5, 7, 13, 17, 241),
    25: (31, 601, 1801),
    26: (3, 2731, 8191),
    27: (7, 73, 262657),
    28: (3, 5, 29, 43, 113, 127),
    29: (233, 1103, 2089),
    30: (3, 7, 11, 31, 151, 331),
}

# ===== GF(2)[x] 보조 함수 =====

def gf2x_from_coeffs(coeffs: Sequence[int]) -> int:
    """계수 열 (낮은 차수부터)을 bitmask 정수로 변환합니다."""
    value = 0
    for i, c in enumerate(coeffs):
        if c & 1:
            value |= 1 << i
    return value


def gf2x_to_coeffs(value: int) -> list[int]:
    """Bitmask 정수를 계수 열 (낮은 차수부터)로 변환합니다. 0은 [0]입니다."""
    if value == 0:
        return [0]
    return [(value >> i) & 1 for i in range(value.bit_length())]


def gf2x_degree(value: int) -> int:
    """차수를 반환합니다. 0 다항식은 -1입니다."""
    return value.bit_length() - 1


def gf2x_mul(a: int, b: int) -> int:
    """Carry-less 곱셈."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def gf2x_divmod(a: int, b: int) -> tuple[int, int]:
    """GF(2)[x]의 나눗셈. (몫, 나머지)를 반환합니다."""
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    quotient = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        quotient ^= 1 << shift
        a ^= b << shift
    return quotient, a


def gf2x_mod(a: int, b: int) -> int:
    """GF(2)[x]의 나머지."""
    return gf2x_divmod(a, b)[1]


def gf2x_gcd(a: int, b: int) -> int:
    """GF(2)[x]의 최대공약수 (monic)."""
    while b:
        a, b = b, gf2x_mod(a, b)
    return a


def find_factor(modulus: int) -> int:
    """차수 ≤ n/2인 모든 다항식으로 나누어 보고 첫 인수를 반환합니다.

    Returns:
        인수 bitmask, 기약이면 0
    """
    n = gf2x_degree(modulus)
    if n <= 0:
        return modulus
    if modulus & 1 == 0:
        return 0b10 if n > 1 else 0
    # 상수항이 0인 인수는 x뿐이므로 홀수 다항식만 시도
    for divisor in range(3, 1 << (n // 2 + 1), 2):
        if gf2x_mod(modulus, divisor) == 0:
            return divisor
    return 0


def is_irreducible(coeffs: Sequence[int] | int) -> bool:
    """GF(2) 위 기약성 판정 (trial division)."""
    value = coeffs if isinstance(coeffs, int) else gf2x_from_coeffs(coeffs)
    if gf2x_degree(value) < 1:
        return False
    if value == 0b10:
        return True
    return find_factor(value) == 0


def irreducible_polynomials(n: int) -> list[list[int]]:
    """차수 n인 monic 기약다항식 전체를 bit 순서로 반환합니다."""
    return [
        gf2x_to_coeffs(v)
        for v in range(1 << n, 1 << (n + 1))
        if is_irreducible(v)
    ]

# ===== FIELD CONTEXT =====

class FieldCtx:
    """Modulus로 고정된 이진 확장체 GF(2ⁿ).

    생성 후에는 변경되지 않으며 여러 worker가 공유해도 안전합니다.
    Generator, table, discrete-log 보조 자료는 처음 필요할 때 계산해 둡니다.
    """

    __slots__ = ("name", "degree", "modulus", "order", "x", "_exp", "_log", "_generator", "_bsgs")

    def __init__(self, modulus: Sequence[int] | int, name: str | None = None):
        value = modulus if isinstance(modulus, int) else gf2x_from_coeffs(modulus)
        n = gf2x_degree(value)
        if not 1 <= n <= MAX_DEGREE:
            raise UnsupportedDegree(f"modulus degree must be between 1 and {MAX_DEGREE}, got {n}")
        factor = find_factor(value)
        if factor:
            raise ReducibleModulus(value, factor)
        self.name = name or f"GF(2^{n})"
        self.degree = n
        self.modulus = value
        self.order = 1 << n
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._generator: int | None = None
        self._bsgs: tuple[int, dict[int, int]] | None = None
        self.x = self.reduce(0b10)
        if n <= TABLE_DEGREE_LIMIT:
            self._build_tables()

    # ----- 기본 연산 (정수 표현) -----

    def reduce(self, a: int) -> int:
        """Modulus로 reduction합니다."""
        n = self.degree
        m = self.modulus
        while a.bit_length() > n:
            a ^= m << (a.bit_length() - n - 1)
        return a

    def mul(self, a: int, b: int) -> int:
        """곱셈."""
        log = self._log
        if log is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[log[a] + log[b]]
        if a.bit_length() < b.bit_length():
            a, b = b, a
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            b >>= 1
        n = self.degree
        m = self.modulus
        while r.bit_length() > n:
            r ^= m << (r.bit_length() - n - 1)
        return r

    def square(self, a: int) -> int:
        """제곱 (Frobenius 한 번)."""
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        """거듭제곱. 음수 지수는 역원의 거듭제곱입니다."""
        if e < 0:
            a = self.inv(a)
            e = -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        """역원. 확장 유클리드 호제법 또는 log table을 씁니다."""
        if a == 0:
            raise ZeroInverse("zero has no inverse")
        if self._log is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1 != 1:
            q, r = gf2x_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 ^ gf2x_mul(q, s1)
        return self.reduce(s1)

    def div(self, a: int, b: int) -> int:
        """나눗셈."""
        return self.mul(a, self.inv(b))

    def frob(self, a: int, k: int = 1) -> int:
        """a^(2^k)."""
        for _ in range(k % self.degree):
            a = self.mul(a, a)
        return a

    def order_of(self, a: int) -> int:
        """곱셈군에서의 위수."""
        if a == 0:
            raise ZeroInverse("zero has no multiplicative order")
        order = self.order - 1
        for p in MERSENNE_PRIME_FACTORS[self.degree]:
            while order % p == 0 and self.pow(a, order // p) == 1:
                order //= p
        return order

    # ----- generator와 table -----

    @property
    def generator(self) -> int:
        """Bit 순서로 가장 작은 원시원소."""
        if self._generator is None:
            target = self.order - 1
            g = 1
            while self.order_of(g) != target:
                g += 1
            self._generator = g
        return self._generator

    def _build_tables(self) -> None:
        g = self.generator
        size = self.order - 1
        exp = [0] * (2 * size + 1)
        log = [0] * self.order
        v = 1
        for i in range(size):
            exp[i] = v
            log[v] = i
            v = self.mul(v, g)
        for i in range(size, 2 * size + 1):
            exp[i] = exp[i - size]
        self._exp = exp
        self._log = log
        logger.debug("built log/exp tables for %s", self.name)

    def dlog(self, a: int) -> int:
        """Generator 기준 이산로그 (baby-step giant-step)."""
        if a == 0:
            raise ZeroInverse("zero has no discrete logarithm")
        if self._log is not None:
            return self._log[a]
        size = self.order - 1
        if self._bsgs is None:
            step = math.isqrt(size) + 1
            baby: dict[int, int] = {}
            v = 1
            for j in range(step):
                baby.setdefault(v, j)
                v = self.mul(v, self.generator)
            self._bsgs = (step, baby)
        step, baby = self._bsgs
        giant = self.inv(self.pow(self.generator, step))
        gamma = a
        for i in range(step + 1):
            j = baby.get(gamma)
            if j is not None:
                return (i * step + j) % size
            gamma = self.mul(gamma, giant)
        raise NoSuchElement(f"no discrete logarithm for {a} in {self.name}")

    # ----- 원소 생성과 텍스트 -----

    def elem(self, value: int) -> "FieldElem":
        """정수 표현으로 원소를 만듭니다."""
        return FieldElem(self, self.reduce(value))

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def power_of_x(self, k: int) -> int:
        """x의 류(class)를 k제곱한 값. 공개 표의 "a^k"에 해당합니다."""
        return self.pow(self.x, k)

    def text(self, a: int) -> str:
        """원소를 "0", "1", "a^k" (또는 x가 원시원소가 아니면 "g^k") 형태로 씁니다."""
        if a == 0:
            return "0"
        if a == 1:
            return "1"
        letter = "a" if self.generator == self.x else "g"
        k = self.dlog(a)
        return letter if k == 1 else f"{letter}^{k}"

    def parse(self, token: str) -> int:
        """text()의 역. "a^k"는 x의 거듭제곱, "g^k"는 generator의 거듭제곱입니다."""
        token = token.strip()
        if token in ("0", "1"):
            return int(token)
        base, _, exponent = token.partition("^")
        try:
            k = int(exponent) if exponent else 1
        except ValueError as exc:
            raise ParseError(f"bad exponent in {token!r}") from exc
        if base == "a":
            return self.power_of_x(k)
        if base == "g":
            return self.pow(self.generator, k)
        raise ParseError(f"unknown field element {token!r}")

    def elements(self) -> Iterator[int]:
        """모든 원소를 bit 순서로 나열합니다."""
        return iter(range(self.order))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("FieldCtx", self.modulus))

    def __repr__(self) -> str:
        return f"FieldCtx({self.name}, n={self.degree})"

    def __reduce__(self):
        return (_restore_field, (self.modulus, self.name))


def _restore_field(modulus: int, name: str) -> FieldCtx:
    return FieldCtx(modulus, name)

# ===== FIELD ELEMENT =====

class FieldElem:
    """FieldCtx의 원소. 값은 항상 reduction된 상태입니다."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    def _other(self, other: object) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise MixedFields(f"{self.ctx.name} vs {other.ctx.name}")
            return other.value
        if isinstance(other, int) and 0 <= other < self.ctx.order:
            return other
        raise TypeError(f"cannot combine FieldElem with {type(other).__name__}")

    def __add__(self, other: object) -> "FieldElem":
        return FieldElem(self.ctx, self.value ^ self._other(other))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self) -> "FieldElem":
        return self

    def __mul__(self, other: object) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __pow__(self, e: int) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.modulus, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return self.ctx.text(self.value)

# ===== 공개 연산 =====

def create_field(modulus: Sequence[int] | int, name: str | None = None) -> FieldCtx:
    """Modulus로 체를 만듭니다.

    Args:
        modulus: 계수 열 (낮은 차수부터) 또는 bitmask
        name: registry key 등 표시용 이름

    Returns:
        FieldCtx

    Raises:
        ReducibleModulus: trial division으로 인수를 찾은 경우
    """
    return FieldCtx(modulus, name)


def arith(op: Literal["add", "mul"], u: FieldElem, v: FieldElem) -> FieldElem:
    """덧셈 또는 곱셈."""
    if u.ctx != v.ctx:
        raise MixedFields(f"{u.ctx.name} vs {v.ctx.name}")
    if op == "add":
        return u + v
    if op == "mul":
        return u * v
    raise ValueError(f"unknown operation {op!r}")


def inverse(u: FieldElem) -> FieldElem:
    """곱셈 역원."""
    return FieldElem(u.ctx, u.ctx.inv(u.value))


def frobenius(u: FieldElem, k: int = 1) -> FieldElem:
    """u^(2^k)."""
    return FieldElem(u.ctx, u.ctx.frob(u.value, k))


def conjugates(ctx: FieldCtx, a: int) -> list[int]:
    """a의 서로 다른 Frobenius 켤레 (a, a², a⁴, ...)."""
    result = [a]
    v = ctx.square(a)
    while v != a:
        result.append(v)
        v = ctx.square(v)
    return result


def minimal_polynomial(u: FieldElem) -> list[int]:
    """u의 최소다항식 (GF(2) 계수, 낮은 차수부터)."""
    ctx = u.ctx
    poly = [1]
    for c in conjugates(ctx, u.value):
        shifted = [0] + poly
        for i, coeff in enumerate(poly):
            shifted[i] ^= ctx.mul(c, coeff)
        poly = shifted
    if any(coeff > 1 for coeff in poly):
        raise NoSuchElement(f"conjugate product of {u!r} is not defined over GF(2)")
    return poly


def find_generator(ctx: FieldCtx) -> FieldElem:
    """Bit 순서로 가장 작은 원시원소."""
    return FieldElem(ctx, ctx.generator)


def element_order(u: FieldElem) -> int:
    """곱셈 위수."""
    return u.ctx.order_of(u.value)


def element_from_exponent(ctx: FieldCtx, k: int) -> FieldElem:
    """x의 류의 k제곱 ("a^k")."""
    return FieldElem(ctx, ctx.power_of_x(k))


def dlog(u: FieldElem) -> int:
    """Generator 기준 이산로그."""
    return u.ctx.dlog(u.value)


def roots_of_unity(ctx: FieldCtx, m: int) -> list[FieldElem]:
    """x^m = 1의 해 전체를 bit 순서로 반환합니다.

    Raises:
        NotADivisor: m이 2ⁿ−1을 나누지 않는 경우
    """
    size = ctx.order - 1
    if m <= 0 or size % m:
        raise NotADivisor(f"{m} does not divide {size}")
    base = ctx.pow(ctx.generator, size // m)
    values = []
    v = 1
    for _ in range(m):
        values.append(v)
        v = ctx.mul(v, base)
    return [FieldElem(ctx, v) for v in sorted(set(values))]


def embed_with_min_poly(ctx: FieldCtx, target: Sequence[int]) -> FieldElem:
    """최소다항식이 target인 원소 중 generator 지수가 가장 작은 것을 찾습니다.

    target의 근은 부분체 F_{2^k}* = ⟨g^r⟩ (r = (2ⁿ−1)/(2ᵏ−1)) 안에 있으므로
    g^(r·j)만 조사하면 됩니다.
    """
    target = [c & 1 for c in target]
    while len(target) > 1 and target[-1] == 0:
        target.pop()
    k = len(target) - 1
    if k < 1 or ctx.degree % k or not is_irreducible(target):
        raise NoSuchElement(f"{target} is not an irreducible divisor degree of {ctx.name}")
    if target == [0, 1]:
        return ctx.zero
    r = (ctx.order - 1) // ((1 << k) - 1)
    base = ctx.pow(ctx.generator, r)
    v = 1
    for _ in range((1 << k) - 1):
        if minimal_polynomial(FieldElem(ctx, v)) == target:
            return FieldElem(ctx, v)
        v = ctx.mul(v, base)
    raise NoSuchElement(f"no root of {target} in {ctx.name}")

def make_embedding(src: FieldCtx, dst: FieldCtx) -> "Embedding":
    """src를 dst 안에 넣는 체 준동형을 만듭니다.

    src의 x 류를 dst에서 src modulus의 근 (embed_with_min_poly가 고른 근)으로 보냅니다.
    """
    image = embed_with_min_poly(dst, gf2x_to_coeffs(src.modulus)).value
    return Embedding(src, dst, image)


class Embedding:
    """부분체 src → dst 준동형. x의 류를 image로 보냅니다."""

    __slots__ = ("src", "dst", "image", "_powers")

    def __init__(self, src: FieldCtx, dst: FieldCtx, image: int):
        self.src = src
        self.dst = dst
        self.image = image
        powers = [1]
        for _ in range(src.degree - 1):
            powers.append(dst.mul(powers[-1], image))
        self._powers = powers

    def __call__(self, a: int) -> int:
        result = 0
        i = 0
        while a:
            if a & 1:
                result ^= self._powers[i]
            a >>= 1
            i += 1
        return result

# ===== REGISTRY =====

@lru_cache(maxsize=1)
def load_registry() -> dict[str, tuple[int, ...]]:
    """files/moduli.json을 읽어 key → 계수 열을 반환합니다."""
    with REGISTRY_PATH.open(encoding="utf-8") as fh:
        raw = json.load(fh)
    return {key: tuple(coeffs) for key, coeffs in raw.items()}


@lru_cache(maxsize=None)
def gf2() -> FieldCtx:
    """소체 GF(2). 계수가 0/1인 공식 (Frobenius 모델 등)의 기본 체입니다."""
    return FieldCtx((1, 1), name="F2")


@lru_cache(maxsize=None)
def registry_field(key: str) -> FieldCtx:
    """Registry key로 FieldCtx를 만들고 cache합니다."""
    registry = load_registry()
    if key not in registry:
        raise KeyError(f"unknown field key {key!r}; known: {sorted(registry)}")
    ctx = FieldCtx(registry[key], name=key)
    logger.debug("loaded field %s", key)
    return ctx
