"""Regenerate (or with --check, verify) the golden JSON outputs listed in manifest.toml."""

import argparse
import contextlib
import io
import sys
from pathlib import Path

try:
    import tomllib
except ImportError:
    import tomli as tomllib

from iwachar.cli import main as cli_main

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent


def load_manifest():
    with (HERE / "manifest.toml").open("rb") as fh:
        return tomllib.load(fh)["outputs"]


def run(argv):
    buf = io.StringIO()
    with contextlib.chdir(ROOT) if hasattr(contextlib, "chdir") else _chdir(ROOT):
        with contextlib.redirect_stdout(buf):
            code = cli_main(list(argv) + ["--json"])
    if code != 0:
        raise RuntimeError(f"iwachar {' '.join(argv)} exited with {code}")
    return buf.getvalue()


@contextlib.contextmanager
def _chdir(path):
    import os
    old = os.getcwd()
    os.chdir(path)
    try:
        yield
    finally:
        os.chdir(old)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--check", action="store_true", help="compare instead of writing")
    args = parser.parse_args()
    bad = []
    for name, argv in load_manifest().items():
        path = HERE / "expected" / f"{name}.json"
        text = run(argv)
        if args.check:
            if not path.exists() or path.read_text() != text:
                bad.append(name)
        else:
            path.write_text(text)
            print(f"wrote {path.relative_to(ROOT)}")
    if bad:
        print("mismatch: " + ", ".join(bad))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
