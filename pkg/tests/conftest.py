"""공용 fixture.

큰 체 위의 전수 분류와 전체 검증 suite는 slow marker로 표시되어 있으며
`pytest -m "not slow"`로 제외할 수 있습니다.
"""

import pytest

from cremona_f2.ff import FieldCtx, gf2, registry_field


@pytest.fixture
def f2() -> FieldCtx:
    return gf2()


@pytest.fixture
def f4() -> FieldCtx:
    return registry_field("F4")


@pytest.fixture
def f8() -> FieldCtx:
    return registry_field("F8")


@pytest.fixture
def f16() -> FieldCtx:
    return registry_field("F16")


@pytest.fixture
def f64() -> FieldCtx:
    return registry_field("F64")


@pytest.fixture
def f256() -> FieldCtx:
    return registry_field("F256")
