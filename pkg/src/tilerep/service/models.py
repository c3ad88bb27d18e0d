"""Request and response schemas for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class CountRequest(BaseModel):
    group: str = Field(description="Group spec: S<n>, C<n>, D<n> or perm(<degree>): ...")
    rank: int = Field(ge=1, description="Rank of the free group")
    budget: Optional[int] = Field(default=None, ge=1)


class LimitRequest(BaseModel):
    group: str
    rule: Optional[str] = Field(default=None, description="Substitution rule file text")
    endo: Optional[str] = Field(default=None, description="Endomorphism file text")
    collar: int = Field(default=0, ge=0, le=1)
    rank: Optional[int] = Field(default=None, ge=1, description="Expected rank cross-check")
    budget: Optional[int] = Field(default=None, ge=1)


class ApproximantRequest(BaseModel):
    rule: str
    collar: int = Field(default=0, ge=0, le=1)


class FactorsRequest(BaseModel):
    rule: str
    length: int = Field(default=2, ge=1)


class GroupEcho(BaseModel):
    spec: str
    order: int


class RuleEcho(BaseModel):
    letters: list[str]
    images: list[list[str]]


class EndoEcho(BaseModel):
    letters: list[str]
    images: list[str]


class EndomorphismInfo(BaseModel):
    generators: list[str]
    images: list[str]


class Counts(BaseModel):
    homs: int
    classes: Optional[int] = None


class LimitMember(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    tuple_: list[str] = Field(alias="tuple")
    orbit_size: Optional[int] = None


class LimitInfo(BaseModel):
    size: int
    steps: int
    transients: int
    members: list[LimitMember]


class CountResponse(BaseModel):
    command: Literal["count"]
    group: GroupEcho
    rank: int
    counts: Counts
    elapsed_ms: float


class LimitResponse(BaseModel):
    command: Literal["limit", "based-limit"]
    group: GroupEcho
    rule: Optional[RuleEcho] = None
    endo: Optional[EndoEcho] = None
    collar: Optional[int] = None
    rank: int
    counts: Counts
    endomorphism: EndomorphismInfo
    limit: LimitInfo
    elapsed_ms: float


class GraphEdge(BaseModel):
    source: int
    target: int
    label: str


class GraphInfo(BaseModel):
    vertices: int
    edges: list[GraphEdge]
    basepoint: int


class ApproximantResponse(BaseModel):
    command: Literal["approximant"]
    rule: RuleEcho
    collar: int
    primitive: bool
    primitivity_witness: Optional[int] = None
    graph: GraphInfo
    rank: int
    endomorphism: EndomorphismInfo
    elapsed_ms: float


class FactorsResponse(BaseModel):
    command: Literal["factors"]
    rule: RuleEcho
    length: int
    primitive: bool
    factors: list[str]
    elapsed_ms: float


class ServiceInfo(BaseModel):
    name: str
    version: str
    endpoints: list[str]
