"""Rewrite the frozen golden outputs.  Review the diff before committing.

    python3 tests/golden/regen.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent))

from golden_corpus import HERE, load_corpus, run_corpus  # noqa: E402

if __name__ == "__main__":
    corpus = load_corpus()
    for fmt in ("text", "json"):
        (HERE / f"expected.{fmt}").write_text("".join(line + "\n" for line in run_corpus(corpus, fmt)))
    print(f"wrote {len(corpus)} expressions")
