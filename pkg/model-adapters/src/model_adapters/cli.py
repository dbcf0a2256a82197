"""Command line entry points: export, models, speech-rate."""

import argparse
import sys
from pathlib import Path

from repaxes.errors import RepaxesError
from repaxes.io import write_manifest

from .errors import AdapterError
from .export import export_embeddings
from .librispeech import corpus_manifest, corpus_speech_rate
from .registry import MODELS
from .spec import load_adapter_spec


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="model-adapters",
        description="Export embeddings from pretrained checkpoints into .emb containers",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    export = commands.add_parser("export", help="embed a manifest's media")
    export.add_argument("spec", help="JSON adapter spec")
    export.add_argument("manifest", help="dataset manifest")
    export.add_argument("out", help="output .emb path")
    export.add_argument("--media-root", default=None,
                        help="directory media paths resolve against (default: manifest dir)")

    commands.add_parser("models", help="list supported checkpoints")

    rate = commands.add_parser("speech-rate", help="ground-truth words per second for a corpus")
    rate.add_argument("root", help="corpus root (speaker/chapter layout)")
    rate.add_argument("--manifest", default=None,
                      help="also write an engine manifest to this path")
    rate.add_argument("--split", default="test",
                      help="split label for manifest records (default: test)")
    return parser


def _cmd_export(args) -> int:
    adapter = load_adapter_spec(args.spec)
    out = export_embeddings(args.manifest, adapter, args.out, media_root=args.media_root)
    print(f"wrote {out} ({adapter.extractor_id}, dim {adapter.dim})")
    return 0


def _cmd_models(args) -> int:
    for name in sorted(MODELS):
        info = MODELS[name]
        poolings = ", ".join(info.poolings)
        print(f"{name:12s} {info.modality:6s} dim {info.dim:5d} pooling: {poolings}")
    return 0


def _cmd_speech_rate(args) -> int:
    stats = corpus_speech_rate(args.root)
    print(f"{stats['count']} clips, mean {stats['mean_wps']:.3f} wps, "
          f"std {stats['std_wps']:.3f}, range [{stats['min_wps']:.3f}, {stats['max_wps']:.3f}]")
    if args.manifest is not None:
        records = corpus_manifest(args.root, split=args.split)
        write_manifest(records, Path(args.manifest))
        print(f"wrote manifest {args.manifest} ({len(records)} records)")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "export":
            return _cmd_export(args)
        if args.command == "models":
            return _cmd_models(args)
        return _cmd_speech_rate(args)
    except (AdapterError, RepaxesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
