"""
JSON document schemas for divisor files, morphism files and command reports.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class BaseSpec(BaseModel):
    even: List[str] = Field(default_factory=list)
    odd: List[str] = Field(default_factory=list)


class CoefficientPair(BaseModel):
    a: str
    b: str


class DivisorDocument(BaseModel):
    """{"g": int, "coeffs": [{"a": poly, "b": poly}], "base": {"even": [...], "odd": [...]}}"""

    g: int = Field(ge=0)
    coeffs: List[CoefficientPair] = Field(default_factory=list)
    base: BaseSpec = Field(default_factory=BaseSpec)

    @model_validator(mode='after')
    def check_count(self):
        if len(self.coeffs) != self.g:
            raise ValueError(f"g = {self.g} needs {self.g} coefficient pairs, got {len(self.coeffs)}")
        return self


class MorphismDocument(BaseModel):
    target: BaseSpec
    assignment: Dict[str, str] = Field(default_factory=dict)


class CommandReport(BaseModel):
    command: str
    status: Literal['pass', 'fail', 'error']
    witness: Optional[List[str]] = None
    dims: Optional[List[Tuple[int, int]]] = None
    runtime_ms: int = 0
    details: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode='after')
    def fail_needs_witness(self):
        if self.status == 'fail' and not self.witness:
            raise ValueError("A failing report must carry a witness")
        return self
