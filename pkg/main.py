"""
W(m,n) Module Engine REST API

Exact arithmetic for the Lie superalgebra W(m,n) of vector fields on a
super torus, its tensor modules, jet algebras and highest weight modules.

Features:
- Grassmann-Laurent arithmetic with exact rationals
- Brackets, twisting by GL(Z), tensor module actions
- Smash and jet algebra relations as operator identities
- Cuspidal annihilators, cover reduction, generalized Verma quotients
- Seeded verification suites

Run with: uvicorn main:app --reload
"""

import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.api.routes import router

logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")

# OpenAPI tag metadata for logical grouping
tags_metadata = [
    {
        "name": "🧮 Expressions",
        "description": "Parse, bracket and apply elements of W(m,n), W(m,n) ⋉ A d0 and W(m+1,n).",
    },
    {
        "name": "📦 Tensor Modules",
        "description": "Actions on T(V, λ), weight multiplicities and GL(Z) twisting.",
    },
    {
        "name": "🏔️ Highest Weight",
        "description": "Generalized Verma modules over W(m+1,n) and dimension tables of their simple quotients.",
    },
    {
        "name": "✅ Verification",
        "description": "Seeded suites of exact identity checks with deterministic reports.",
    },
    {
        "name": "🔧 Utilities",
        "description": "Health checks and system information.",
    },
]

# Create FastAPI application
app = FastAPI(
    title="W(m,n) Module Engine API",
    description="""
# W(m,n) Module Engine

Exact computations for the Lie superalgebra **W(m,n)** of superderivations of
`C[t1^±1, ..., tm^±1] ⊗ Λ(ξ1, ..., ξn)`.

---

## ✨ Features

| Feature | Description |
|---------|-------------|
| **Exact scalars** | Every coefficient is a rational `a/b`; no floating point |
| **Brackets** | Super bracket, application to functions, GL(Z) twisting |
| **Tensor modules** | `T(V, λ) = A ⊗ V` for gl(m,n)-modules V |
| **Jets** | Smash and jet algebra relations checked as operator identities |
| **Cuspidal modules** | Annihilating differences, cover reduction to a finite window |
| **Verma quotients** | Radical and `L(T)` dimension tables, exact for m = 0 |

---

## ✍️ Expression Grammar

```
3/2*t1^-2*x1*D1        t_i: even variables, x_a: odd variables
[D1, t1*D1]            D_i = t_i ∂/∂t_i, P_a = ∂/∂ξ_a, D0 for the extra variable
```

---

## 🚀 Quick Start

`POST /api/v1/bracket` with `{"left": "t1*D1", "right": "t1^-1*D1", "m": 1, "n": 0}`
returns `-2*D1`.
    """,
    version="1.0.0",
    docs_url="/docs",
    redoc_url="/redoc",
    openapi_tags=tags_metadata,
    contact={
        "name": "W(m,n) Module Engine",
    },
    license_info={
        "name": "MIT",
    },
)

# Add CORS middleware for cross-origin requests
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include API routes
app.include_router(router, prefix="/api/v1")


# Root endpoint
@app.get("/", tags=["🔧 Utilities"])
async def root():
    """Root endpoint with API information and navigation links."""
    return {
        "name": "W(m,n) Module Engine API",
        "version": "1.0.0",
        "description": "Exact arithmetic for W(m,n) and its modules",
        "documentation": {
            "swagger_ui": "/docs",
            "redoc": "/redoc",
        },
        "health": "/api/v1/health",
        "endpoints": {
            "parse": "POST /api/v1/parse",
            "bracket": "POST /api/v1/bracket",
            "apply": "POST /api/v1/apply",
            "act": "POST /api/v1/act",
            "multiplicity": "POST /api/v1/multiplicity",
            "twist": "POST /api/v1/twist",
            "verma": "POST /api/v1/verma",
            "verify": "POST /api/v1/verify",
            "suites": "GET /api/v1/suites",
        }
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
