#!/usr/bin/env python3
"""Regenerate every figure dataset.

Thin driver over ``cascade-thermo figure``; useful for rebuilding the whole
set after a numerics change and timing each preset.
"""

import argparse
import sys
import time

from cascade_thermo import cli

ALL = ["fig2", "fig3a", "fig3b", "fig4", "fig5", "fig6"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figs", help="output directory (default: figs)")
    ap.add_argument("--only", nargs="*", choices=ALL, metavar="ID",
                    help="subset of presets to rebuild")
    args = ap.parse_args(argv)

    for fig_id in args.only or ALL:
        t0 = time.perf_counter()
        rc = cli.main(["figure", fig_id, "--out", args.out])
        if rc != 0:
            return rc
        print(f"{fig_id}: {time.perf_counter() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
