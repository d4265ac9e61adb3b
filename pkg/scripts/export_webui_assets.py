#!/usr/bin/env python3
"""Export the knowledge base and filter-parity fixtures for the web UI.

Writes the canonical KB JSON plus a fixtures file of random filter criteria
with the engine's candidate lists, which the frontend test suite replays to
prove client-side filtering matches the Python engine.

    python3 scripts/export_webui_assets.py --out-dir frontend/public
"""

import argparse
import json
import sys
from pathlib import Path

from clusterkit.cli import make_parity_fixtures
from clusterkit.knowledge import dumps_kb, load_kb


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="frontend/public")
    parser.add_argument("--kb", default=None, help="source KB path (default: bundled seed)")
    parser.add_argument("--fixture-count", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    kb = load_kb(args.kb)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    kb_path = out_dir / "kb.json"
    kb_path.write_text(dumps_kb(kb), encoding="utf-8")
    print(f"wrote {kb_path}")

    fixtures = make_parity_fixtures(kb, count=args.fixture_count, seed=args.seed)
    fixtures_path = out_dir / "filter_fixtures.json"
    fixtures_path.write_text(
        json.dumps(fixtures, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    print(f"wrote {fixtures_path} ({len(fixtures['fixtures'])} fixtures)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
