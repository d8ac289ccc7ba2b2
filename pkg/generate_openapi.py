"""
Generate OpenAPI specification files for the W(m,n) Module Engine API.

Usage:
    python generate_openapi.py [--out DIR]

Outputs:
    - DIR/openapi.json  (OpenAPI 3.1 JSON spec)
    - DIR/openapi.yaml  (when PyYAML is installed)
"""

import argparse
import json
from pathlib import Path

from main import app


def generate(out_dir: Path = Path(".")) -> dict:
    """Extract the OpenAPI schema from FastAPI and write it to out_dir."""
    schema = app.openapi()
    out_dir.mkdir(parents=True, exist_ok=True)

    with open(out_dir / "openapi.json", "w", encoding="utf-8") as f:
        json.dump(schema, f, indent=2, ensure_ascii=False)
    print(f"✅ Generated {out_dir / 'openapi.json'}")

    try:
        import yaml

        with open(out_dir / "openapi.yaml", "w", encoding="utf-8") as f:
            yaml.dump(schema, f, default_flow_style=False, allow_unicode=True, sort_keys=False)
        print(f"✅ Generated {out_dir / 'openapi.yaml'}")
    except ImportError:
        print("⚠️  PyYAML not installed, skipping YAML generation.")
    return schema


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--out", type=Path, default=Path("."), help="Output directory")
    generate(parser.parse_args().out)
