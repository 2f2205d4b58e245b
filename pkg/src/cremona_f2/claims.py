"""검증 claim registry.

각 claim은 suite에 속하며, 인자 없이 실행되어 (verdict, witness)를 반환합니다.
run_claim은 실행 결과를 Certificate로 감싸고, replay는 저장된 certificate의
claim을 다시 실행하여 verdict와 witness가 같은지 비교합니다.
"""

import json
import logging
import time
from itertools import product
from typing import Any, Callable, NamedTuple

from cremona_f2 import __version__
from cremona_f2.aut import (
    ALPHA4,
    GENERATOR_A,
    GENERATOR_B,
    aut_d5_model,
    aut_d6_model,
    aut_q,
    aut_q_matrices,
    alpha4_powers,
    closure,
    d5_power_ratmap,
    form_preserved_symbolically,
    identity_matrix,
    involutions,
    j4_linear_part,
    mat_mul_gf2,
    pgl2_f2,
    pgl2_involutions,
    pgl3_f2,
    pgl3_two_generator_relations,
)
from cremona_f2.classify import (
    brute_force_class_count,
    geiser_pair_classes,
    geiser_pairs,
    size2_orbits_in_p2_f4,
    size5_orbit_summary,
)
from cremona_f2.errors import UnknownClaim
from cremona_f2.ff import load_registry, registry_field
from cremona_f2.frob import FrobTag, frob_model
from cremona_f2.geom import normalize_ints
from cremona_f2.rmap import (
    commutes_with_frob,
    fibration,
    identity,
    is_involution,
    maps_equal_rational,
    preserves_fibration,
    semi_preserves,
)
from cremona_f2.rmap_builtins import (
    ONE_LINK22_BASE_ACTION,
    alpha2,
    alpha4,
    build_phi_d5,
    builtin,
    d5_pointwise_check,
    d6_chain_check,
    one_link_composition_check,
    one_link_conjugation,
    q_chain_check,
    q_form,
    twist_iterate_matches,
)
from cremona_f2.rmap_families import (
    FAMILY_PENCIL,
    double_section_check,
    excluded_point_check,
    family_generic_crosscheck,
    family_involution_check,
    family_samples,
    fiber_product_check,
    pencil_restriction_is_square,
    unique_tangent_check,
    verify_conic_identity,
)
from cremona_f2.state_verify import Certificate
from cremona_f2.utils import dumps_canonical, get_timestamp

logger = logging.getLogger(__name__)

# ===== 설정 =====

# Suite 실행 순서
SUITES: tuple[str, ...] = ("groups", "involutions", "families", "models", "counting", "links")

# 닫힌 형태와 비교하는 twisted Frobenius 반복 횟수
TWIST_ITERATES: dict[FrobTag, tuple[int, ...]] = {
    FrobTag.StdP2: (1, 2, 3),
    FrobTag.QTwist: (1, 2, 3),
    FrobTag.D5Twist: (1, 2, 3, 4, 5),
    FrobTag.D6Twist: (1, 2, 3, 4, 5),
}

# 공통 접선을 확인하는 체 차수
TANGENT_DEGREES: tuple[int, ...] = tuple(range(1, 9))

ClaimResult = tuple[bool, dict[str, Any]]


class ClaimSpec(NamedTuple):
    """등록된 claim."""

    claim: str
    suite: str
    description: str
    fields: tuple[str, ...]
    run: Callable[[], ClaimResult]


CLAIMS: dict[str, ClaimSpec] = {}


def _claim(claim: str, description: str, fields: tuple[str, ...] = ()):
    suite = claim.split(".", 1)[0]
    if suite not in SUITES:
        raise ValueError(f"claim {claim!r} names an unknown suite")

    def decorator(run: Callable[[], ClaimResult]) -> Callable[[], ClaimResult]:
        CLAIMS[claim] = ClaimSpec(claim, suite, description, fields, run)
        return run
    return decorator

# ===== GROUPS =====

@_claim("groups.pgl3_order", "PGL₃(F₂)는 168개 원소를 가집니다")
def _pgl3_order() -> ClaimResult:
    group = pgl3_f2()
    has_identity = any(g.entries == identity_matrix(3) for g in group.elements)
    return group.order == 168 and has_identity, {"order": group.order, "identity": has_identity}


@_claim("groups.pgl3_generators", "A, B가 PGL₃(F₂)를 생성하고 B₂, B₃ 관계식이 성립합니다")
def _pgl3_generators() -> ClaimResult:
    generated = len(closure([GENERATOR_A, GENERATOR_B]))
    relations = pgl3_two_generator_relations()
    return generated == 168 and all(relations.values()), {"closure": generated, "relations": relations}


@_claim("groups.pgl3_involutions", "PGL₃(F₂)는 involution들로 생성됩니다")
def _pgl3_involutions() -> ClaimResult:
    invs = involutions([g.entries for g in pgl3_f2().elements])
    generated = len(closure(invs))
    return generated == 168, {"involutions": len(invs), "closure": generated}


@_claim("groups.pgl2", "PGL₂(F₂)는 위수 6이고 두 involution으로 생성됩니다")
def _pgl2() -> ClaimResult:
    invs = pgl2_involutions()
    generated = len(closure(invs[:2]))
    ok = len(pgl2_f2()) == 6 and len(invs) == 3 and generated == 6
    return ok, {"order": len(pgl2_f2()), "involutions": len(invs), "closure_of_two": generated}


@_claim("groups.aut_q", "Q를 보존하는 PGL₄(F₂) 원소는 120개이고 Q(F₄)의 점을 보존합니다", ("F4",))
def _aut_q() -> ClaimResult:
    group = aut_q()
    symbolic = all(form_preserved_symbolically(m) for m in aut_q_matrices())
    ctx = registry_field("F4")
    form = q_form(ctx)
    on_q = sorted(
        {normalize_ints("P3", v, ctx) for v in product(range(ctx.order), repeat=4) if any(v) and form.eval(v) == 0},
        key=lambda p: p.coords,
    )
    preserved = all(form.eval(g.act(p).coords) == 0 for g in group.elements for p in on_q)
    ok = group.order == 120 and symbolic and preserved
    return ok, {"order": group.order, "symbolic": symbolic, "q_f4_points": len(on_q), "points_preserved": preserved}


@_claim("groups.aut_d5", "h는 위수 5이고 D5Twist와 교환합니다")
def _aut_d5() -> ClaimResult:
    group = aut_d5_model()
    fifth = maps_equal_rational(d5_power_ratmap(5), identity("P2"))
    commutes = commutes_with_frob(builtin("d5_h"), frob_model(FrobTag.D5Twist))
    return group.order == 5 and fifth and commutes, {"order": group.order, "h5_identity": fifth, "commutes": commutes}


@_claim("groups.aut_d6", "D₆ 모델의 18개 자기동형은 모두 D6Twist와 교환합니다", ("F64",))
def _aut_d6() -> ClaimResult:
    group = aut_d6_model()
    model = frob_model(FrobTag.D6Twist)
    failing = [g.label for g in group.elements if g.steps and not commutes_with_frob(g.ratmap(), model)]
    return group.order == 18 and not failing, {"order": group.order, "not_commuting": failing}


@_claim("groups.j4", "π₄를 ι∘π₄로 보내는 PGL₃(F₂) 원소는 α₄의 네 거듭제곱이고 α₄²는 밑에서 자명합니다")
def _j4() -> ClaimResult:
    found = j4_linear_part()
    powers = set(alpha4_powers())
    base_action = {str(list(map(list, g))): [list(r) for r in iota] for g, iota in found}
    square = mat_mul_gf2(ALPHA4, ALPHA4)
    square_trivial = any(g == square and iota == identity_matrix(2) for g, iota in found)
    ok = {g for g, _ in found} == powers and square_trivial
    return ok, {"elements": len(found), "base_action": base_action, "alpha4_squared_trivial": square_trivial}

# ===== INVOLUTIONS =====

@_claim("involutions.quintic", "두 5차 사상은 involution입니다")
def _quintic() -> ClaimResult:
    verdicts = {name: is_involution(builtin(name)) for name in ("quintic_inv_1", "quintic_inv_2")}
    return all(verdicts.values()), verdicts


@_claim("involutions.d6", "세 D₆ 사상은 involution이고 D6Twist와 교환합니다", ("F64",))
def _d6_involutions() -> ClaimResult:
    model = frob_model(FrobTag.D6Twist)
    witness = {}
    for name in ("d6_inv_size2", "d6_inv_size3_1", "d6_inv_size3_2"):
        f = builtin(name)
        witness[name] = {"involution": is_involution(f), "commutes": commutes_with_frob(f, model)}
    ok = all(v["involution"] and v["commutes"] for v in witness.values())
    return ok, witness

# ===== FAMILIES =====

@_claim("families.conic_identity", "L2*, L4* 매개화가 conic 조건을 항등적으로 만족합니다")
def _conic_identity() -> ClaimResult:
    witness = {
        tag: {"identity": verify_conic_identity(tag), "excluded_point": excluded_point_check(tag)}
        for tag in FAMILY_PENCIL
    }
    return all(all(v.values()) for v in witness.values()), witness


@_claim("families.samples", "L2*, L4*의 표본 사상은 fibration을 보존하는 involution입니다")
def _family_samples() -> ClaimResult:
    witness = {}
    for tag in FAMILY_PENCIL:
        failing = [repr(a) for a in family_samples() if not family_involution_check(tag, a)]
        witness[tag] = {"failing": failing, "generic_crosscheck": family_generic_crosscheck(tag)}
    ok = all(not v["failing"] and v["generic_crosscheck"] for v in witness.values())
    return ok, witness

# ===== MODELS =====

@_claim("models.rho_q", "ρ_Q의 상은 이차곡면 Q 위에 있습니다")
def _rho_q() -> ClaimResult:
    on_form = q_form().compose(list(builtin("rho_Q").components)).is_zero()
    return on_form, {"on_form": on_form}


@_claim("models.fiber_product", "X₄, X₂ chart에서 ψ∘φ = id, φ∘ψ = id입니다")
def _fiber_product() -> ClaimResult:
    witness = {f"Y{which}": fiber_product_check(which) for which in ("4", "2")}
    return all(all(v.values()) for v in witness.values()), witness


@_claim("models.phi_d5", "D₅ 모델 사상 φ가 Sq와 D5Twist를 켤레로 만듭니다", ("F32", "F2_15"))
def _phi_d5() -> ClaimResult:
    phi = build_phi_d5()
    pointwise = d5_pointwise_check()
    return pointwise, {"phi": phi.to_text(), "pointwise": pointwise}


@_claim("models.chains", "Q와 D₆ 모델 사슬이 QTwist, D6Twist를 재현합니다", ("F4", "F64"))
def _chains() -> ClaimResult:
    witness = {"q_chain": q_chain_check(), "d6_chain": d6_chain_check()}
    return all(witness.values()), witness


@_claim("models.twist_iterates", "Twisted Frobenius 반복이 닫힌 형태와 같습니다")
def _twist_iterates() -> ClaimResult:
    witness = {
        tag.value: {str(k): twist_iterate_matches(tag, k) for k in ks}
        for tag, ks in TWIST_ITERATES.items()
    }
    return all(all(v.values()) for v in witness.values()), witness

# ===== COUNTING =====

@_claim("counting.geiser_pairs", "크기 5+2 Geiser 궤도 쌍은 정확히 두 류입니다", ("F4", "F2_10"))
def _geiser_pairs() -> ClaimResult:
    pairs = geiser_pairs()
    classes = geiser_pair_classes()
    twos = size2_orbits_in_p2_f4()
    witness = {
        "classes": classes,
        "size2_orbits": twos,
        "pairs": [[q.text() for q in two.points] for _, two in pairs],
    }
    return classes == 2 and twos == 7, witness


@_claim("counting.unique_size5", "세 점이 공선이 아닌 크기 5 궤도는 PGL₃(F₂) 아래 유일합니다", ("F32",))
def _unique_size5() -> ClaimResult:
    summary = size5_orbit_summary()
    ok = bool(summary["single_class"]) and summary["irreducible_quintics"] == 6
    return ok, dict(summary)


@_claim("counting.brute_force", "전수 분류가 후보 필터 분류와 같은 류 개수를 줍니다", ("F8", "F64"))
def _brute_force() -> ClaimResult:
    expected = {"P2_d3": 1, "D6_d2": 1, "D6_d3": 2}
    found = {
        "P2_d3": brute_force_class_count("P2", 3),
        "D6_d2": brute_force_class_count("D6", 2),
        "D6_d3": brute_force_class_count("D6", 3),
    }
    return found == expected, {"expected": expected, "found": found}

# ===== LINKS =====

@_claim("links.one_link_conjugation", "J₂의 φ_[1:0:0] = A∘σ∘A⁻¹이고 기저점에서 0입니다", ("F4",))
def _one_link_conjugation() -> ClaimResult:
    result = one_link_conjugation()
    return bool(result["conjugate"] and result["vanishes"]), result


@_claim("links.one_link_composition", "φ_[1:1:0] = φ_[1:0:0]∘φ_[0:1:0]∘φ_[1:0:0]")
def _one_link_composition() -> ClaimResult:
    ok = one_link_composition_check()
    return ok, {"composition": ok}


@_claim("links.fibrations", "J₄ 예제 사상이 π₄를 보존하고 J₂ 예제 사상이 π₂를 fibre 단위로 보존하며 α₂, α₄가 fibration을 반보존합니다")
def _fibrations() -> ClaimResult:
    pi2, pi4 = fibration("pi2"), fibration("pi4")
    preserved = {
        name: preserves_fibration(builtin(name), pi4)
        for name in ("oneLink_p100", "oneLink_p010", "oneLink_p001", "oneLink_p110", "oneLink_p101")
    }
    # J₂의 두 사상은 π₂의 fibre를 fibre로 보내며 밑공간에는 ι[s:t] = [s:s+t]로 작용합니다.
    preserved.update({
        name: semi_preserves(builtin(name), pi2, ONE_LINK22_BASE_ACTION) for name in ("oneLink22_p100", "oneLink22_p101")
    })
    involution = {name: is_involution(builtin(name)) for name in ("oneLink_p100", "oneLink22_p100")}
    semi = {
        "alpha2": semi_preserves(alpha2(), pi2, [[1, 0], [1, 1]]),
        "alpha4": semi_preserves(alpha4(), pi4, [[0, 1], [1, 0]]),
    }
    ok = all(preserved.values()) and all(involution.values()) and all(semi.values())
    return ok, {"preserved": preserved, "involution": involution, "semi_preserved": semi}


@_claim("links.tangents", "x = 0은 pencil의 유일한 공통 접선이고 double section이 X₄, X₂ 위에 있습니다")
def _tangents() -> ClaimResult:
    unique = {
        pencil: {str(k): unique_tangent_check(pencil, k) for k in TANGENT_DEGREES}
        for pencil in ("pi2", "pi4")
    }
    squares = {pencil: pencil_restriction_is_square(pencil) for pencil in ("pi2", "pi4")}
    sections = double_section_check()
    ok = all(all(v.values()) for v in unique.values()) and all(squares.values()) and all(sections.values())
    return ok, {"unique_tangent": unique, "restriction_square": squares, "double_section": sections}

# ===== 실행 =====

def claim_ids(suite: str | None = None) -> list[str]:
    """등록된 claim id (정렬). suite를 주면 그 suite만.

    Raises:
        UnknownClaim: 알 수 없는 suite
    """
    if suite is not None and suite not in SUITES:
        raise UnknownClaim(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    return sorted(c for c, spec in CLAIMS.items() if suite is None or spec.suite == suite)


def _inputs(spec: ClaimSpec) -> dict[str, Any]:
    registry = load_registry()
    return {"fields": {key: list(registry[key]) for key in spec.fields}}


def _normalized(data: dict[str, Any]) -> dict[str, Any]:
    # JSON 왕복 후의 형태 (tuple → list, key 정렬)
    return json.loads(dumps_canonical(data))


def run_claim(claim: str) -> Certificate:
    """Claim을 실행하고 Certificate를 만듭니다.

    Raises:
        UnknownClaim: 등록되지 않은 claim
    """
    spec = CLAIMS.get(claim)
    if spec is None:
        raise UnknownClaim(f"unknown claim {claim!r}")
    start = time.perf_counter()
    verdict, witness = spec.run()
    elapsed = time.perf_counter() - start
    logger.info("%s: %s (%.2fs)", claim, "PASS" if verdict else "FAIL", elapsed)
    return Certificate(
        claim=claim,
        suite=spec.suite,
        description=spec.description,
        inputs=_inputs(spec),
        verdict=bool(verdict),
        witness=_normalized(witness),
        tool_version=__version__,
        wall_clock=round(elapsed, 3),
        timestamp=get_timestamp(),
    )


def replay(certificate: Certificate) -> tuple[bool, Certificate]:
    """저장된 certificate의 claim을 다시 실행합니다.

    Returns:
        (verdict, witness, inputs가 모두 같은지, 새 certificate)
    """
    fresh = run_claim(certificate.claim)
    same = (
        fresh.verdict == certificate.verdict
        and fresh.witness == _normalized(certificate.witness)
        and fresh.inputs == _normalized(certificate.inputs)
    )
    if not same:
        logger.warning("replay of %s does not reproduce the recorded certificate", certificate.claim)
    return same, fresh
