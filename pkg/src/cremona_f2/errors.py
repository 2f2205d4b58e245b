"""패키지 전역 예외 계층.

모든 예외는 CremonaError를 상속하며, CLI는 이를 exit code 1로 변환합니다.
검증 불일치(MismatchReport)만 별도로 exit code 2로 처리됩니다.
"""


class CremonaError(Exception):
    """패키지 예외의 공통 상위 클래스."""


# ===== ff =====

class ReducibleModulus(CremonaError):
    """Modulus가 GF(2) 위에서 기약이 아닙니다."""

    def __init__(self, modulus: int, factor: int):
        self.modulus = modulus
        self.factor = factor
        super().__init__(f"modulus {modulus:#b} has factor {factor:#b}")


class UnsupportedDegree(CremonaError):
    """Modulus 차수가 지원 범위 밖입니다."""


class MixedFields(CremonaError):
    """서로 다른 FieldCtx의 원소를 섞어 연산했습니다."""


class ZeroInverse(CremonaError):
    """0의 역원을 요청했습니다."""


class NotADivisor(CremonaError):
    """m이 2ⁿ−1을 나누지 않습니다."""


class NoSuchElement(CremonaError):
    """주어진 최소다항식을 갖는 원소가 없습니다."""


# ===== poly =====

class MixedContexts(CremonaError):
    """다항식의 체 또는 변수 개수가 다릅니다."""


class ArityMismatch(CremonaError):
    """대입하는 값의 개수가 변수 개수와 다릅니다."""


class ZeroPolynomial(CremonaError):
    """0 다항식에는 차수가 정의되지 않습니다."""


class ParseError(CremonaError):
    """다항식 또는 원소 텍스트를 해석할 수 없습니다."""


# ===== geom =====

class ZeroVector(CremonaError):
    """모든 좌표가 0인 점은 사영 점이 아닙니다."""


class ChartFailure(CremonaError):
    """P¹×P¹ 점에 대해 유효한 affine chart가 없습니다."""


class TooManyPoints(CremonaError):
    """General position 판정에 허용된 점 개수를 넘었습니다."""


# ===== frob =====

class IndeterminatePoint(CremonaError):
    """사상의 모든 성분이 0이 되는 점입니다 (base locus 위의 점)."""


class PeriodOverflow(CremonaError):
    """궤도 길이가 cap을 넘었습니다."""


class UnsupportedSize(CremonaError):
    """이 모델에서 지원하지 않는 궤도 크기입니다."""


# ===== classify =====

class UnsupportedPair(CremonaError):
    """지원하지 않는 (surface, d) 조합입니다."""


class MismatchReport(CremonaError):
    """계산 결과가 공개된 표와 일치하지 않습니다."""

    def __init__(self, message: str, missing: list[str] | None = None, extra: list[str] | None = None):
        self.missing = missing or []
        self.extra = extra or []
        super().__init__(message)


# ===== rmap =====

class WrongDimension(CremonaError):
    """선형계의 차원이 기대값과 다릅니다."""


class SpaceMismatch(CremonaError):
    """합성하려는 사상의 공간이 맞지 않습니다."""


class ZeroFunction(CremonaError):
    """0 유리함수는 허용되지 않습니다."""


class UnknownName(CremonaError):
    """등록되지 않은 built-in 사상 이름입니다."""


# ===== claims =====

class UnknownClaim(CremonaError):
    """등록되지 않은 claim 또는 suite 이름입니다."""
