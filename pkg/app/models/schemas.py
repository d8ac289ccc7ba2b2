"""
Pydantic models for W(m,n) engine API requests and responses.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from app.core.settings import DEFAULT_SAMPLES, DEFAULT_SEED
from app.core.suite_data import get_suite

KINDS = ("wmn", "wmn_d0", "wm1n")


def _rational(value) -> str:
    """Normalize an 'a/b' string (or int) to the canonical Fraction text."""
    try:
        return str(Fraction(str(value).strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"'{value}' is not an exact rational a/b")


def _kind(value: str) -> str:
    key = value.lower().replace("-", "_")
    if key not in KINDS:
        raise ValueError(f"Algebra kind '{value}' not found. Available: {', '.join(KINDS)}")
    return key


# =============================================================================
# ALGEBRA AND MODULE DATA
# =============================================================================

class AlgebraSpec(BaseModel):
    """Which algebra an expression lives in."""
    kind: str = Field("wmn", description="Algebra kind: 'wmn', 'wmn_d0' (W(m,n) ⋉ A d0) or 'wm1n' (W(m+1,n))")
    m: int = Field(1, ge=0, le=4, description="Number of even variables")
    n: int = Field(1, ge=0, le=4, description="Number of odd variables")

    @field_validator('kind')
    @classmethod
    def validate_kind(cls, v):
        return _kind(v)


class ModuleSpec(AlgebraSpec):
    """
    Tensor module T(V, λ) or T(V, λ, λ0).

    λ has one entry per even label: m entries, or m+1 for 'wm1n'.
    """
    rep: str = Field("natural", description="gl-module V: trivial, natural, natural⊗natural, berezinian:c")
    lam: List[str] = Field(default_factory=list, description="λ as exact rationals, e.g. ['1/2']")
    lam0: Optional[str] = Field(None, description="λ0, required exactly for kind 'wmn_d0'")

    @field_validator('lam')
    @classmethod
    def validate_lam(cls, v):
        return [_rational(x) for x in v]

    @field_validator('lam0')
    @classmethod
    def validate_lam0(cls, v):
        return None if v is None else _rational(v)

    @model_validator(mode='after')
    def validate_shape(self):
        even = self.m + 1 if self.kind == "wm1n" else self.m
        if not self.lam:
            self.lam = ["1/2"] * even
        if len(self.lam) != even:
            raise ValueError(f"λ needs {even} entries, got {len(self.lam)}")
        if (self.lam0 is not None) != (self.kind == "wmn_d0"):
            raise ValueError("λ0 must be given exactly for kind 'wmn_d0'")
        return self


# =============================================================================
# EXPRESSION REQUESTS
# =============================================================================

class ParseRequest(AlgebraSpec):
    """Parse and normalize an expression."""
    text: str = Field(..., description="Expression, e.g. '[D1, t1*D1]' or '3/2*t1^-2*x1*D1'")


class ParseResponse(BaseModel):
    success: bool = True
    canonical: str = Field(..., description="Canonical text of the syntax tree")
    value: str = Field(..., description="Normal form of the evaluated element")
    sort: str = Field(..., description="'function' or 'field'")
    json_form: Dict = Field(..., description="Sparse JSON form of the value")


class BracketRequest(AlgebraSpec):
    left: str = Field(..., description="First vector field")
    right: str = Field(..., description="Second vector field")


class ApplyRequest(AlgebraSpec):
    field: str = Field(..., description="Vector field X")
    function: str = Field(..., description="Function f; the result is X(f)")


class ElementResponse(BaseModel):
    success: bool = True
    text: str
    parity: Optional[int] = Field(None, description="0 or 1; null when not homogeneous")
    json_form: Dict


class ActRequest(BaseModel):
    module: ModuleSpec
    field: str = Field(..., description="Vector field of the module's algebra")
    vector: str = Field(..., description="Function f; the vector is f ⊗ v_j")
    j: int = Field(0, ge=0, description="Basis index of V")


class MultiplicityRequest(BaseModel):
    module: ModuleSpec
    weight: Optional[List[str]] = Field(None, description="Weight μ; omit to get a table")
    radius: int = Field(1, ge=0, le=4, description="Offset radius of the table")

    @field_validator('weight')
    @classmethod
    def validate_weight(cls, v):
        return None if v is None else [_rational(x) for x in v]


class MultiplicityRow(BaseModel):
    offset: List[int]
    dim: int


class MultiplicityResponse(BaseModel):
    success: bool = True
    weight: Optional[List[str]] = None
    multiplicity: Optional[int] = None
    table: Optional[List[MultiplicityRow]] = None


class TwistRequest(BaseModel):
    """θ ∈ GL_{m+1}(Z) acting on W(m+1,n)."""
    theta: List[List[int]] = Field(..., description="Integer matrix with det ±1")
    m: int = Field(1, ge=0, le=4, description="Even count of W(m,n); θ is (m+1)×(m+1)")
    n: int = Field(0, ge=0, le=4)
    field: Optional[str] = Field(None, description="Field of W(m+1,n) to twist")
    weights: Optional[List[List[str]]] = Field(None, description="Support points to transform")

    @field_validator('weights')
    @classmethod
    def validate_weights(cls, v):
        return None if v is None else [[_rational(x) for x in point] for point in v]

    @model_validator(mode='after')
    def validate_theta(self):
        size = self.m + 1
        if len(self.theta) != size or any(len(row) != size for row in self.theta):
            raise ValueError(f"θ must be {size}×{size}")
        if self.field is None and self.weights is None:
            raise ValueError("Give a field, weights, or both")
        return self


class TwistResponse(BaseModel):
    success: bool = True
    field: Optional[str] = None
    weights: Optional[List[List[str]]] = None


class VermaRequest(BaseModel):
    """Generalized Verma module over W(m+1,n) with top T(V, λ, λ0)."""
    m: int = Field(0, ge=0, le=2, description="0 gives the exact mode")
    n: int = Field(0, ge=0, le=2)
    rep: str = Field("trivial")
    lam: List[str] = Field(default_factory=list)
    lam0: str = Field("1", description="λ0, the d0-eigenvalue on T")
    depth: int = Field(2, ge=0, le=6, description="Deepest degree D")
    raise_depth: Optional[int] = Field(None, ge=1, le=8, description="Largest raising degree E (default D)")
    window: int = Field(1, ge=0, le=2, description="t-window B for m >= 1")

    @field_validator('lam')
    @classmethod
    def validate_lam(cls, v):
        return [_rational(x) for x in v]

    @field_validator('lam0')
    @classmethod
    def validate_lam0(cls, v):
        return _rational(v)

    @model_validator(mode='after')
    def validate_lam_length(self):
        if not self.lam:
            self.lam = ["1/2"] * self.m
        if len(self.lam) != self.m:
            raise ValueError(f"λ needs {self.m} entries, got {len(self.lam)}")
        return self


class VermaResponse(BaseModel):
    success: bool = True
    report: Dict


# =============================================================================
# SUITES
# =============================================================================

class SuiteConfig(BaseModel):
    """
    Configuration of one verification suite run.

    Unset m, n, kind and rep fall back to the suite's defaults; a suite with a
    catalogue sweep then runs every listed algebra kind or (m, n) shape.
    """
    suite: str = Field(..., description="Suite name, see GET /suites")
    m: Optional[int] = Field(None, ge=0, le=3)
    n: Optional[int] = Field(None, ge=0, le=3)
    kind: Optional[str] = Field(None, description="Algebra kind for algebra-level suites")
    rep: Optional[str] = Field(None, description="gl-module V of the tensor module")
    lam: List[str] = Field(default_factory=list, description="λ; defaults to 1/2 per even label")
    lam0: Optional[str] = Field(None, description="λ0 for kind 'wmn_d0'")
    samples: int = Field(DEFAULT_SAMPLES, ge=1, le=5000)
    seed: int = Field(DEFAULT_SEED)
    window: int = Field(1, ge=0, le=3, description="t-window for Verma and annihilator sweeps")
    depth: int = Field(2, ge=0, le=5, description="Verma depth D")
    raise_depth: Optional[int] = Field(None, ge=1, le=8)
    corrupt_sign: bool = Field(False, description="Plant a sign error in module-axiom (test mode)")
    targets: List[Tuple[str, int, int]] = Field(
        default_factory=list, description="(kind, m, n) algebras to run; filled from the catalogue sweep"
    )

    @field_validator('suite')
    @classmethod
    def validate_suite(cls, v):
        get_suite(v)
        return v.lower().replace("_", "-")

    @field_validator('kind')
    @classmethod
    def validate_kind(cls, v):
        return None if v is None else _kind(v)

    @field_validator('lam')
    @classmethod
    def validate_lam(cls, v):
        return [_rational(x) for x in v]

    @field_validator('lam0')
    @classmethod
    def validate_lam0(cls, v):
        return None if v is None else _rational(v)

    @model_validator(mode='after')
    def fill_defaults(self):
        defaults = get_suite(self.suite)
        sweep_kinds = self.kind is None and "kinds" in defaults
        sweep_shapes = self.m is None and self.n is None and "shapes" in defaults
        self.m = defaults["m"] if self.m is None else self.m
        self.n = defaults["n"] if self.n is None else self.n
        self.kind = self.kind or defaults["kind"]
        self.rep = self.rep or defaults.get("rep", "natural")
        if self.suite != "verma" and self.m + self.n == 0:
            raise ValueError("W(0,0) is the zero algebra; choose m + n >= 1")
        if self.suite in ("ann", "cover"):
            if self.m < 1:
                raise ValueError(f"Suite '{self.suite}' needs m >= 1")
            if self.kind == "wm1n":
                raise ValueError(f"Suite '{self.suite}' runs over kind 'wmn' or 'wmn_d0'")
        even = self.m + 1 if self.kind == "wm1n" else self.m
        if self.suite == "verma":
            even = self.m
            self.lam0 = self.lam0 or "1"
        elif self.kind == "wmn_d0":
            self.lam0 = self.lam0 or "1"
        elif self.lam0 is not None:
            raise ValueError("λ0 is only meaningful for kind 'wmn_d0' or the verma suite")
        if not self.lam:
            self.lam = ["1/2"] * even
        if len(self.lam) != even:
            raise ValueError(f"λ needs {even} entries, got {len(self.lam)}")
        if self.targets:
            self.targets = [(_kind(k), m, n) for k, m, n in self.targets]
        elif sweep_kinds:
            self.targets = [(k, self.m, self.n) for k in defaults["kinds"]]
        elif sweep_shapes:
            self.targets = [(self.kind, m, n) for m, n in defaults["shapes"]]
        else:
            self.targets = [(self.kind, self.m, self.n)]
        if any(m < 0 or n < 0 or (m + n == 0 and k != "wm1n") for k, m, n in self.targets):
            raise ValueError("Every target needs m, n >= 0 and m + n >= 1")
        return self


class CheckResult(BaseModel):
    name: str
    passed: int
    failed: int
    failures: List[str]


class SuiteReportResponse(BaseModel):
    success: bool = True
    suite: str
    group: str
    passed: bool
    exit_code: int
    config: Dict
    checks: List[CheckResult]
    details: Dict = Field(default_factory=dict)


class SuiteInfo(BaseModel):
    name: str
    group: str
    anchor: str


class SuiteListResponse(BaseModel):
    success: bool = True
    count: int
    suites: List[SuiteInfo]


class ErrorResponse(BaseModel):
    """Error response model."""
    success: bool = False
    error: str
    detail: Optional[str] = None
