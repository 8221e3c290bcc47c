from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional
from datetime import datetime
from enum import Enum

from app.services.bijection import Comparison
from app.services.coeff import scalar_to_json
from app.services.diagrams import level_text


class RelationKind(str, Enum):
    tl = "tl"
    bmw = "bmw"


# Scalars
class Scalar(BaseModel):
    """Exact scalar: a Laurent polynomial, a rational function or a cyclotomic number"""
    text: str = Field(..., description="Human readable rendering, re-parseable for Laurent polynomials")
    terms: Optional[Dict[str, str]] = Field(default=None, description="Laurent polynomial terms, exponent -> rational coefficient")
    numerator: Optional[Dict[str, str]] = Field(default=None, description="Numerator terms of a non-Laurent rational function")
    denominator: Optional[Dict[str, str]] = Field(default=None, description="Denominator terms of a non-Laurent rational function")
    conductor: Optional[int] = Field(default=None, description="n for a value in Q(zeta_n)")
    coordinates: Optional[List[str]] = Field(default=None, description="Power-basis coordinates in Q(zeta_n)")

    @classmethod
    def from_value(cls, value: Any) -> "Scalar":
        data = scalar_to_json(value)
        if "conductor" in data:
            return cls(text=value.to_text(), **data)
        return cls(**data)


# Diagram and tableau models
class DiagramResponse(BaseModel):
    op: str = Field(..., description="Operation (in-lambda, in-gamma, star, predecessors)")
    shape: str = Field(..., description="Input diagram")
    ell: str = Field(..., description="Level, an integer or inf")
    m: Optional[int] = Field(default=None, description="Size parameter for in-lambda and predecessors")
    member: Optional[bool] = Field(default=None, description="Membership result")
    result: Optional[str] = Field(default=None, description="Single diagram result")
    results: Optional[List[str]] = Field(default=None, description="Diagram list result")


class CountResponse(BaseModel):
    kind: str = Field(..., description="tab or osc")
    shape: str = Field(..., description="Target diagram")
    ell: str = Field(..., description="Level, an integer or inf")
    length: int = Field(..., description="Tableau length m")
    count: int = Field(..., description="Number of restricted tableaux")
    items: Optional[List[str]] = Field(default=None, description="Explicit enumeration when requested")


class BijectionResponse(BaseModel):
    op: str = Field(..., description="forward, inverse or compare")
    ell: Optional[str] = Field(default=None, description="Level, an integer or inf")
    t1: str = Field(..., description="Step string of t_lambda")
    t2: str = Field(..., description="Step string of t_mu")
    osc: Optional[str] = Field(default=None, description="Oscillating tableau as ';'-separated diagrams")
    comparison: Optional[Comparison] = Field(default=None, description="Lexicographic comparison of t1 and t2")


# Invariant models
class InvariantResponse(BaseModel):
    kind: str = Field(..., description="jones, kauffman or oracle")
    strands: int = Field(..., description="Number of strands n")
    word: str = Field(..., description="Braid word, whitespace separated letters")
    exponent_sum: int = Field(..., description="Exponent sum e(beta)")
    components: int = Field(..., description="Components of the closure")
    ell: str = Field(default="inf", description="Level the invariant was evaluated at")
    value: Scalar = Field(..., description="Invariant value")

    @classmethod
    def from_invariant(cls, invariant, word: str) -> "InvariantResponse":
        return cls(
            kind=invariant.kind,
            strands=invariant.strands,
            word=word,
            exponent_sum=invariant.exponent_sum,
            components=invariant.components,
            ell=level_text(invariant.ell),
            value=Scalar.from_value(invariant.value),
        )


class LickorishResponse(BaseModel):
    strands: int = Field(..., description="Number of strands n")
    word: str = Field(..., description="Braid word")
    components: int = Field(..., description="Components of the closure")
    lhs: Scalar = Field(..., description="K(beta; q^3, q) from the squared trace")
    rhs: Scalar = Field(..., description="J(beta; q)^2")
    equal: bool = Field(..., description="Exact equality of both sides")

    @classmethod
    def from_result(cls, result, word: str) -> "LickorishResponse":
        return cls(
            strands=result.lhs.strands,
            word=word,
            components=result.components,
            lhs=Scalar.from_value(result.lhs.value),
            rhs=Scalar.from_value(result.rhs.value),
            equal=result.equal,
        )


# Algebra reports
class RelationReport(BaseModel):
    kind: RelationKind = Field(..., description="tl for the path model, bmw for the square realization")
    m: int = Field(..., description="Number of strands")
    ell: str = Field(..., description="Level, an integer or inf")
    checks: Dict[str, bool] = Field(..., description="Relation name -> holds exactly")
    passed: bool = Field(..., description="All checks hold")

    @classmethod
    def from_checks(cls, kind: RelationKind, m: int, ell, checks: Dict[str, bool]) -> "RelationReport":
        return cls(kind=kind, m=m, ell=level_text(ell), checks=checks, passed=all(checks.values()))


class AuditRow(BaseModel):
    label: str = Field(..., description="BMW diagram labelling the block")
    source: str = Field(..., description="(s,t), (s,SYM) or (s,ALT)")
    dim: int = Field(..., description="Block dimension from the square construction")
    osc_count: int = Field(..., description="count_osc of the label")


class DimAuditResponse(BaseModel):
    m: int = Field(..., description="Number of strands")
    ell: str = Field(..., description="Level, an integer or inf")
    osc_total: int = Field(..., description="Sum of squared oscillating tableau counts")
    tl_total: int = Field(..., description="Square dimension from TL block sizes")
    block_total: int = Field(..., description="Sum of squared block dimensions")
    agrees: bool = Field(..., description="All three totals and every block agree")
    rows: List[AuditRow] = Field(..., description="Per-block audit rows")

    @classmethod
    def from_audit(cls, audit) -> "DimAuditResponse":
        return cls(
            m=audit.m,
            ell=level_text(audit.ell),
            osc_total=audit.osc_total,
            tl_total=audit.tl_total,
            block_total=audit.block_total,
            agrees=audit.agrees,
            rows=[
                AuditRow(label=str(row.label), source=str(row.source), dim=row.dim, osc_count=row.osc_count)
                for row in audit.rows
            ],
        )


class SpanResponse(BaseModel):
    m: int = Field(..., description="Number of strands")
    ell: str = Field(..., description="Level, an integer or inf")
    dimension: int = Field(..., description="Dimension of the algebra generated by the G~_i")
    upper_bound: int = Field(..., description="Sum of squared block dimensions")
    prime: int = Field(..., description="Prime used for the rank computation")
    point: int = Field(..., description="Value of q in F_p")
    certified: bool = Field(..., description="dimension reaches the upper bound")

    @classmethod
    def from_result(cls, m: int, ell, result) -> "SpanResponse":
        return cls(
            m=m, ell=level_text(ell), dimension=result.dimension, upper_bound=result.upper_bound,
            prime=result.prime, point=result.point, certified=result.certified,
        )


# Image models
class GroupDescriptorModel(BaseModel):
    kind: str = Field(..., description="Group family")
    name: str = Field(..., description="Readable group name")
    provenance: str = Field(..., description="Case index 1-13 or GENERIC")
    rank: int = Field(default=0, description="n of PSp_n(3) when applicable")
    dims: List[int] = Field(default_factory=list, description="PSU dimensions when applicable")
    expected_order: Optional[int] = Field(default=None, description="Group order, null when infinite")
    finite: bool = Field(..., description="Whether the group is finite")

    @classmethod
    def from_descriptor(cls, descriptor) -> "GroupDescriptorModel":
        return cls(
            kind=descriptor.kind.value,
            name=descriptor.name,
            provenance=descriptor.provenance,
            rank=descriptor.rank,
            dims=list(descriptor.dims),
            expected_order=descriptor.expected_order,
            finite=descriptor.is_finite,
        )


class ImageRequest(BaseModel):
    m: int = Field(..., description="Number of strands")
    shape: str = Field(..., description="BMW diagram, e.g. [2,1]")
    ell: int = Field(..., description="Level, at least 6")
    budget: Optional[int] = Field(default=None, description="BFS element cap, defaults to BMWSQ_BUDGET")


class ImageClassifyResponse(BaseModel):
    m: int = Field(..., description="Number of strands")
    shape: str = Field(..., description="BMW diagram")
    ell: str = Field(..., description="Level")
    descriptor: GroupDescriptorModel = Field(..., description="Predicted closed projective image")


class EnumerationResponse(BaseModel):
    m: int = Field(..., description="Number of strands")
    shape: str = Field(..., description="BMW diagram")
    ell: str = Field(..., description="Level")
    order: int = Field(..., description="Elements found")
    hit_cap: bool = Field(..., description="Whether the search stopped at the budget")
    budget: int = Field(..., description="BFS element cap")
    dim: int = Field(..., description="Block dimension")
    elapsed_seconds: float = Field(..., description="Search time")
    status: str = Field(..., description="verified, mismatch, consistent or inconclusive")
    expected: GroupDescriptorModel = Field(..., description="Predicted image")

    @classmethod
    def from_result(cls, m: int, shape: str, ell, result) -> "EnumerationResponse":
        return cls(
            m=m, shape=shape, ell=level_text(ell), order=result.order, hit_cap=result.hit_cap,
            budget=result.budget, dim=result.dim, elapsed_seconds=round(result.elapsed, 3),
            status=result.status, expected=GroupDescriptorModel.from_descriptor(result.expected),
        )


# Verification models
class SuiteResult(BaseModel):
    index: int = Field(..., description="Suite number 1-10")
    name: str = Field(..., description="Suite name")
    passed: bool = Field(..., description="Whether every check in the suite held")
    detail: str = Field(..., description="Summary of what was checked, or the first failure")
    elapsed_seconds: float = Field(..., description="Wall time")


class VerificationReport(BaseModel):
    quick: bool = Field(..., description="Quick sizes instead of the full acceptance sizes")
    passed: bool = Field(..., description="All suites passed")
    suites: List[SuiteResult] = Field(..., description="Per-suite results in order")
    elapsed_seconds: float = Field(..., description="Total wall time")
    settings: Dict[str, Any] = Field(default_factory=dict, description="Effective configuration")


class StreamEvent(BaseModel):
    event_type: str = Field(..., description="Event type (status, suite, complete)")
    data: dict = Field(..., description="Event data")


class HealthResponse(BaseModel):
    status: str = "healthy"
    timestamp: datetime
    version: str = "1.0.0"
    settings: Dict[str, Any] = Field(default_factory=dict, description="Effective configuration")


# Published JSON schemas, name -> model
SCHEMA_MODELS = {
    "scalar": Scalar,
    "diagram": DiagramResponse,
    "count": CountResponse,
    "bijection": BijectionResponse,
    "invariant": InvariantResponse,
    "lickorish": LickorishResponse,
    "relation_report": RelationReport,
    "dim_audit": DimAuditResponse,
    "span": SpanResponse,
    "image_classify": ImageClassifyResponse,
    "enumeration": EnumerationResponse,
    "verification_report": VerificationReport,
    "stream_event": StreamEvent,
}
