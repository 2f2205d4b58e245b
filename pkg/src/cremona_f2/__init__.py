"""GF(2) 위 평면 Cremona 군 생성원 검증 도구.

이 패키지는 이진 확장체 산술, 다변수 다항식, 사영 점의 general position 판정,
Frobenius 궤도 분류, 유리사상 항등식 검증을 제공하며,
분류와 검증 workflow를 LangGraph graph로 구성합니다.
"""

__version__ = "0.1.0"
