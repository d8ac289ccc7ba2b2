"""
Verification Suite Static Data Module

Contains the catalogue of verification suites:
- Suite names in run order
- The identity family each suite exercises, with a representative formula
- Default (m, n), algebra kind and gl-module per suite
- Algebra kinds or (m, n) shapes swept when the caller leaves them unset
"""

# =============================================================================
# SUITE CATALOGUE
# =============================================================================

SUITES = {
    "superalg-axioms": {
        "group": "Grassmann and Laurent arithmetic",
        "anchor": "ξ_α² = 0, ξ_αξ_β = −ξ_βξ_α; ∂_α a left superderivation",
        "m": 1, "n": 2, "kind": "wmn",
    },
    "jacobi": {
        "group": "Super Jacobi identity",
        "anchor": "[fη, gτ] = fη(g)τ − (−1)^{(p̄f+p̄η)(p̄g+p̄τ)} gτ(f)η + (−1)^{p̄η p̄g} fg[η, τ]",
        "m": 1, "n": 1, "kind": "wmn",
        "kinds": ["wmn", "wmn_d0", "wm1n"],
    },
    "bracket-vs-composition": {
        "group": "Bracket as supercommutator of derivations",
        "anchor": "[X, Y](f) = X(Y f) − (−1)^{p̄X p̄Y} Y(X f)",
        "m": 1, "n": 1, "kind": "wmn",
        "shapes": [(1, 1), (1, 2), (2, 1)],
    },
    "smash": {
        "group": "Smash bracket table",
        "anchor": "[D_i(f, r), D_j(g, s)] = s_i D_j(fg, r+s) − ...",
        "m": 1, "n": 1, "kind": "wmn",
    },
    "jets": {
        "group": "Jet bracket relations",
        "anchor": "[d_i(f, ℓ), d_j(g, k)] = k_i d_j(fg, ℓ+k) − ℓ_j d_i(fg, ℓ+k)",
        "m": 1, "n": 1, "kind": "wmn",
    },
    "jets-vs-smash": {
        "group": "Jet expansion of the smash generators",
        "anchor": "d_i(f, k−ε_i) = 0 for |k| > 1",
        "m": 2, "n": 1, "kind": "wmn",
    },
    "gl-embed": {
        "group": "gl(m,n) inside the jet algebra",
        "anchor": "e_ij ↦ d_j(1, ε_i − ε_j), e_iβ ↦ ∂_β(1, ε_i)",
        "m": 1, "n": 1, "kind": "wmn",
    },
    "module-axiom": {
        "group": "Tensor module action",
        "anchor": "t^s f d_j (t^r g ⊗ v) = ... + Σ_α (f)∗∂_α g ⊗ e_αj v",
        "m": 1, "n": 1, "kind": "wmn",
    },
    "j-kernel": {
        "group": "Jet kernel",
        "anchor": "J annihilates every finite-dimensional simple module of the jet algebra",
        "m": 1, "n": 1, "kind": "wmn",
    },
    "cat-roundtrip": {
        "group": "Fiber round trip",
        "anchor": "(t^s f d_j) t^r u = r_j t^{r+s} f u + Σ_k s^k/k! t^{r+s} d_j(f, k−ε_j) u",
        "m": 1, "n": 1, "kind": "wmn",
    },
    "ann": {
        "group": "Cuspidal annihilators",
        "anchor": "Σ_{a=0}^N (−1)^a C(N,a) (t^p t_i^a ξ^r d_j)(t_i^{q−a} d_i)",
        "m": 1, "n": 0, "kind": "wmn", "rep": "trivial",
    },
    "cover": {
        "group": "Cover and cuspidal reduction",
        "anchor": "ψ(τ, m) g = (−1)^{(p̄τ+p̄m)p̄g} (gτ) m",
        "m": 1, "n": 0, "kind": "wmn", "rep": "trivial",
    },
    "verma": {
        "group": "Highest weight type modules",
        "anchor": "M(T) = Ind_{V₀⊕V₊}^V T ≅ U(V₋) ⊗ T; L(T) = M(T)/M^rad",
        "m": 0, "n": 0, "kind": "wm1n", "rep": "trivial",
    },
}

SUITE_ORDER = list(SUITES.keys())


def get_suite(name: str) -> dict:
    """
    Get suite metadata by name (case-insensitive).

    Args:
        name: Suite identifier (e.g., 'jacobi', 'jets-vs-smash')

    Returns:
        Suite dict with group, anchor and defaults

    Raises:
        ValueError: If the suite is unknown
    """
    key = name.lower().replace("_", "-")
    if key not in SUITES:
        available = ", ".join(SUITE_ORDER)
        raise ValueError(f"Suite '{name}' not found. Available: {available}")
    return SUITES[key]


def list_suites() -> list:
    """Return the suite catalogue in run order."""
    return [
        {"name": name, "group": SUITES[name]["group"], "anchor": SUITES[name]["anchor"]}
        for name in SUITE_ORDER
    ]
