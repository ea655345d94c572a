#!/usr/bin/env python3
"""Generate a synthetic corpus on disk in any supported dialect.

Examples:
    python scripts/make_synthetic_corpus.py --kind planted --seed 42 \
        --out corpora/planted.brk --dialect bracket
    python scripts/make_synthetic_corpus.py --kind planted --seed 200 \
        --schema arrau_like --surface-definiteness \
        --out corpora/planted.sff --dialect standoff
    python scripts/make_synthetic_corpus.py --kind random --n-docs 40 \
        --out corpora/mixed.jsonl
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from bridgekit.ingest import emit_bracket, emit_canonical
from bridgekit.synth import (
    balanced_sampling_corpus,
    planted_rule_corpus,
    random_corpus,
    standoff_text,
)

ARRAU_POOL = ("person", "concrete", "space", "abstract", "plan")


def build(args) -> list:
    if args.kind == "random":
        return random_corpus(args.seed, args.n_docs, flavor=args.flavor)
    if args.kind == "sampling":
        return balanced_sampling_corpus(args.seed, n_docs=args.n_docs)
    label_pool = ARRAU_POOL if args.schema == "arrau_like" else None
    kwargs = {"label_pool": label_pool} if label_pool else {}
    return planted_rule_corpus(
        args.seed,
        n_docs=args.n_docs,
        schema=args.schema,
        surface_definiteness=args.surface_definiteness,
        single_link_per_anaphor=args.single_link,
        **kwargs,
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--kind", choices=["random", "planted", "sampling"], default="planted")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--n-docs", type=int, default=24)
    parser.add_argument("--flavor", default="canonical",
                        choices=["canonical", "gum_like", "arrau_like"],
                        help="schema flavor for --kind random")
    parser.add_argument("--schema", default="gum_like", choices=["gum_like", "arrau_like"],
                        help="schema for --kind planted")
    parser.add_argument("--surface-definiteness", action="store_true",
                        help="mark definites with a 'the' token instead of annotation")
    parser.add_argument("--single-link", action="store_true",
                        help="at most one bridging link per anaphor (bracket-compatible)")
    parser.add_argument("--dialect", choices=["bracket", "standoff", "canonical"],
                        default="canonical")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    docs = build(args)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.dialect == "bracket":
        out.write_bytes(b"".join(emit_bracket(doc) for doc in docs))
    elif args.dialect == "standoff":
        out.write_text(standoff_text(docs))
    else:
        out.write_bytes(emit_canonical(docs))
    print(f"wrote {len(docs)} documents to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
