"""
API Routes for the W(m,n) Module Engine

Provides REST endpoints for:
- /parse, /bracket, /apply - Expressions in W(m,n), W(m,n) ⋉ A d0 and W(m+1,n)
- /act, /multiplicity - Tensor modules T(V, λ)
- /twist - GL(Z) twisting of W(m+1,n) and of supports
- /verma - Generalized Verma modules and their simple quotients
- /verify, /suites - Verification suites
- /health - Health check endpoint
"""

import logging

from fastapi import APIRouter, HTTPException

from app.core.suite_data import list_suites
from app.models.schemas import (
    ActRequest,
    ApplyRequest,
    BracketRequest,
    ElementResponse,
    ModuleSpec,
    MultiplicityRequest,
    MultiplicityResponse,
    MultiplicityRow,
    ParseRequest,
    ParseResponse,
    SuiteConfig,
    SuiteInfo,
    SuiteListResponse,
    SuiteReportResponse,
    TwistRequest,
    TwistResponse,
    VermaRequest,
    VermaResponse,
)
from app.services.expr import (
    field_to_json,
    format_field,
    format_poly,
    format_value,
    format_vector,
    parse,
    parse_field,
    parse_poly,
    parse_value,
    parse_vector,
    to_json,
    to_text,
    vector_to_json,
)
from app.services.suites import run_suite
from app.services.superalg import SuperPoly, format_scalar
from app.services.tensormod import TensorModuleSpec, act, multiplicity, multiplicity_table, tensor_module
from app.services.verma import radical_at
from app.services.vfields import Algebra, AlgebraKind, apply, bracket, support_transform, twist_field

logger = logging.getLogger(__name__)

router = APIRouter()


def _algebra(request) -> Algebra:
    return Algebra(AlgebraKind(request.kind), request.m, request.n)


def _module(spec: ModuleSpec) -> TensorModuleSpec:
    return tensor_module(spec.kind, spec.m, spec.n, spec.rep, spec.lam, spec.lam0)


def _server_error(e: Exception) -> HTTPException:
    logger.exception("computation failed")
    return HTTPException(status_code=500, detail=f"Computation error: {str(e)}")


# =============================================================================
# EXPRESSIONS
# =============================================================================

@router.post("/parse", response_model=ParseResponse, tags=["🧮 Expressions"])
async def parse_expression(request: ParseRequest):
    """
    Parse an expression and evaluate it to normal form.

    Example request:
    ```json
    {"text": "[D1, t1*D1]", "kind": "wmn", "m": 1, "n": 1}
    ```
    """
    try:
        value = parse_value(request.text, _algebra(request))
        return ParseResponse(
            canonical=to_text(parse(request.text)),
            value=format_value(value),
            sort="function" if isinstance(value, SuperPoly) else "field",
            json_form=to_json(value),
        )
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise _server_error(e)


@router.post("/bracket", response_model=ElementResponse, tags=["🧮 Expressions"])
async def bracket_fields(request: BracketRequest):
    """
    Super bracket of two vector fields.

    Example: `t1*D1` and `t1^-1*D1` give `-2*D1`.
    """
    try:
        algebra = _algebra(request)
        result = bracket(parse_field(request.left, algebra), parse_field(request.right, algebra))
        return ElementResponse(text=format_field(result), parity=result.parity(), json_form=field_to_json(result))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise _server_error(e)


@router.post("/apply", response_model=ElementResponse, tags=["🧮 Expressions"])
async def apply_field(request: ApplyRequest):
    """Apply a vector field to a function."""
    try:
        algebra = _algebra(request)
        result = apply(parse_field(request.field, algebra), parse_poly(request.function, algebra))
        return ElementResponse(text=format_poly(result), parity=result.parity(), json_form=to_json(result))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise _server_error(e)


# =============================================================================
# TENSOR MODULES
# =============================================================================

@router.post("/act", response_model=ElementResponse, tags=["📦 Tensor Modules"])
async def act_on_vector(request: ActRequest):
    """
    Action of a field on f ⊗ v_j in T(V, λ).

    Example request:
    ```json
    {
        "module": {"kind": "wmn", "m": 1, "n": 1, "rep": "natural", "lam": ["1/2"]},
        "field": "t1*D1",
        "vector": "x1",
        "j": 1
    }
    ```
    """
    try:
        spec = _module(request.module)
        w = parse_vector(request.vector, spec, request.j)
        result = act(spec, parse_field(request.field, spec.algebra), w)
        return ElementResponse(text=format_vector(result), parity=result.parity(), json_form=vector_to_json(result))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise _server_error(e)


@router.post("/multiplicity", response_model=MultiplicityResponse, tags=["📦 Tensor Modules"])
async def weight_multiplicity(request: MultiplicityRequest):
    """
    Weight multiplicity of T(V, λ).

    With `weight` the dimension of that weight space is returned; without it,
    a table over offsets ||r|| <= radius.
    """
    try:
        spec = _module(request.module)
        if request.weight is not None:
            return MultiplicityResponse(weight=request.weight, multiplicity=multiplicity(spec, request.weight))
        rows = multiplicity_table(spec, request.radius)
        return MultiplicityResponse(table=[MultiplicityRow(offset=list(r), dim=d) for r, d in rows])
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise _server_error(e)


@router.post("/twist", response_model=TwistResponse, tags=["📦 Tensor Modules"])
async def twist(request: TwistRequest):
    """
    Apply θ ∈ GL_{m+1}(Z) to a field of W(m+1,n) and/or to support weights.

    Example request:
    ```json
    {"theta": [[1, 1], [0, 1]], "m": 1, "weights": [["1", "0"]]}
    ```
    """
    try:
        response = TwistResponse()
        if request.field is not None:
            algebra = Algebra(AlgebraKind.WM1N, request.m, request.n)
            response.field = format_field(twist_field(request.theta, parse_field(request.field, algebra)))
        if request.weights is not None:
            points = sorted(support_transform(request.theta, request.weights))
            response.weights = [[format_scalar(x) for x in point] for point in points]
        return response
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise _server_error(e)


# =============================================================================
# HIGHEST WEIGHT MODULES AND SUITES
# =============================================================================

# Plain def: FastAPI runs these long computations in its threadpool.
@router.post("/verma", response_model=VermaResponse, tags=["🏔️ Highest Weight"])
def verma_table(request: VermaRequest):
    """
    Dimensions of M(T), its radical and L(T) at degrees 0..-depth.

    m = 0 is exact; m >= 1 is a t-windowed approximation and is flagged.
    """
    try:
        top = tensor_module("wmn_d0", request.m, request.n, request.rep, request.lam, request.lam0)
        report = radical_at(top, request.depth, request.raise_depth, request.window)
        return VermaResponse(report=report.to_dict())
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise _server_error(e)


@router.post("/verify", response_model=SuiteReportResponse, tags=["✅ Verification"])
def verify(config: SuiteConfig):
    """
    Run one verification suite.

    The report is deterministic for a given seed; `exit_code` is 0 when all
    checks pass and 1 otherwise.
    """
    try:
        return SuiteReportResponse(**run_suite(config).to_dict())
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise _server_error(e)


@router.get("/suites", response_model=SuiteListResponse, tags=["✅ Verification"])
async def get_suites():
    """List suites with the equation group each one checks."""
    suites = list_suites()
    return SuiteListResponse(count=len(suites), suites=[SuiteInfo(**s) for s in suites])


@router.get("/health", tags=["🔧 Utilities"])
async def health_check():
    """
    Health check endpoint.

    Returns status of the API.
    """
    return {
        "status": "healthy",
        "service": "W(m,n) Module Engine",
        "version": "1.0.0"
    }
