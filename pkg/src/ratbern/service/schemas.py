"""Request/response models shared by the HTTP service and the CLI client.

Rational-backend values are serialized losslessly as "p/q" strings; float
values stay JSON numbers.  Responses carry no timestamps so identical
requests serialize byte-identically.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, model_validator

SCHEMA_VERSION = "1"

Number = Union[int, float, str]


def encode_number(value) -> Number:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value
    return float(value)


def decode_number(value: Number, exact: bool):
    """Parse a payload entry; "p/q" strings and decimals are exact-friendly."""
    if exact:
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, int):
            return Fraction(value)
        return Fraction(str(value))
    if isinstance(value, str):
        return float(Fraction(value))
    return float(value)


class FamilyPayload(BaseModel):
    kind: Literal[
        "classical", "one_plus_x_squared", "phi_abs", "sqrt_nodes", "phi_generic"
    ]
    a: Optional[float] = None
    samples: Optional[List[Number]] = None


class OperatorSpecDocument(BaseModel):
    mode: Literal["gamma", "nodes", "power_poly", "family", "phi_samples"]
    n: int = Field(ge=1)
    payload: Union[FamilyPayload, List[Number]]
    backend: Literal["float", "rational"] = "float"

    @model_validator(mode="after")
    def _validate(self):
        if self.backend == "rational" and self.n > 64:
            raise ValueError("rational backend supports n <= 64")
        if self.mode == "family":
            if not isinstance(self.payload, FamilyPayload):
                raise ValueError("family mode requires a family payload")
        else:
            if isinstance(self.payload, FamilyPayload):
                raise ValueError(f"{self.mode} mode requires a numeric payload")
            expected = {
                "gamma": self.n,
                "nodes": self.n + 1,
                "phi_samples": self.n,
            }.get(self.mode)
            if expected is not None and len(self.payload) != expected:
                raise ValueError(
                    f"{self.mode} payload must have {expected} entries for n={self.n}"
                )
            if self.mode == "power_poly" and len(self.payload) > self.n:
                raise ValueError("power_poly payload degree must be <= n-1")
        return self


class WViolationModel(BaseModel):
    index: int
    ratios: Tuple[Number, Number]


class OperatorSummary(BaseModel):
    n: int
    delta_n: Number
    nodes: List[Number]
    gamma: List[Number]
    alpha: List[Number]


class BuildResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    version: str
    command: Literal["build"] = "build"
    status: Literal["ok", "w_violation"]
    backend: str
    operator: Optional[OperatorSummary] = None
    violation: Optional[WViolationModel] = None


class ConvergeRequest(BaseModel):
    spec: OperatorSpecDocument
    f: str
    n_list: List[int]
    grid: int = Field(default=1001, ge=2)


class ConvergeRow(BaseModel):
    n: int
    delta_n: float
    sup_error: float
    bound_omega1: float
    bound_omega2: float


class ConvergeResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    version: str
    command: Literal["converge"] = "converge"
    status: Literal["ok"] = "ok"
    backend: str
    f: str
    rows: List[ConvergeRow]


class VoronovskajaRequest(BaseModel):
    spec: OperatorSpecDocument
    f: str
    x: float = Field(gt=0.0, lt=1.0)
    n_list: List[int]


class VoronovskajaRow(BaseModel):
    n: int
    ratio: float
    target: Optional[float] = None
    mamedov: float
    mamedov_cap: float


class VoronovskajaResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    version: str
    command: Literal["voronovskaja"] = "voronovskaja"
    status: Literal["ok"] = "ok"
    backend: str
    f: str
    x: float
    rows: List[VoronovskajaRow]


class CertifyRequest(BaseModel):
    spec: OperatorSpecDocument
    suite: Literal["moments", "bounds", "all"] = "all"
    grid: int = Field(default=1001, ge=2)


class CertificateRow(BaseModel):
    name: str
    worst_slack: float
    passed: bool


class CertifyResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    version: str
    command: Literal["certify"] = "certify"
    status: Literal["ok", "certificate_failure"]
    backend: str
    suite: str
    rows: List[CertificateRow]
