#!/usr/bin/env python3
"""Fetch the public networks used for the published summary rows.

Nothing here runs on import or during the test suite.  Invoke explicitly::

    python3 scripts/download_datasets.py --dest data/
    QUADCOEF_DATA=data/ pytest tests/test_acceptance.py -k published

Each archive is unpacked, its ``out.*`` edge list is copied to
``<dest>/<name>.txt`` and the archive is removed.  The source URLs follow the
KONECT download layout and have not been checked from this environment;
if a URL has moved, download the archive by hand and pass ``--archive``.
"""

import argparse
import shutil
import sys
import tarfile
import tempfile
import urllib.request
from pathlib import Path

KONECT = "http://konect.cc/files/download.tsv.{}.tar.bz2"

DATASETS = {
    "FW-FloridaDry": "foodweb-baydry",
    "FW-LittleRock": "maayan-foodweb",
    "Cit-Cora": "subelj_cora",
}


def extract_edge_list(archive: Path, dest: Path):
    with tempfile.TemporaryDirectory() as tmp:
        with tarfile.open(archive) as tf:
            tf.extractall(tmp, filter="data")
        found = sorted(Path(tmp).rglob("out.*"))
        if not found:
            raise RuntimeError(f"{archive}: no out.* edge list inside")
        shutil.copyfile(found[0], dest)


def fetch(name: str, dest_dir: Path, archive: Path | None = None):
    dest = dest_dir / f"{name}.txt"
    if dest.exists():
        print(f"{name}: already present at {dest}")
        return dest
    if archive is None:
        url = KONECT.format(DATASETS[name])
        archive = dest_dir / f"{DATASETS[name]}.tar.bz2"
        print(f"{name}: downloading {url}")
        with urllib.request.urlopen(url, timeout=120) as resp, open(archive, "wb") as fh:
            shutil.copyfileobj(resp, fh)
        extract_edge_list(archive, dest)
        archive.unlink()
    else:
        extract_edge_list(archive, dest)
    print(f"{name}: wrote {dest}")
    return dest


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dest", type=Path, default=Path("data"))
    p.add_argument("--only", choices=sorted(DATASETS), action="append")
    p.add_argument("--archive", type=Path, help="local archive to unpack instead of downloading (needs one --only)")
    args = p.parse_args(argv)
    if args.archive and len(args.only or []) != 1:
        p.error("--archive needs exactly one --only")
    args.dest.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in args.only or sorted(DATASETS):
        try:
            fetch(name, args.dest, args.archive)
        except Exception as exc:  # keep going with the other networks
            print(f"{name}: failed: {exc}", file=sys.stderr)
            failed += 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
