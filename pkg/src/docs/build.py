import os
import warnings
from pathlib import Path
from time import perf_counter as time
import sys

import pdoc

from .local import MODULES


def build_docs(*args, **kwargs):
    """
    Build static HTML documentation of the public modules.
    Output is placed in a 'docs' subfolder of the current working directory.
    """
    x1 = time()
    pdoc.render.configure(docformat="google", math=True)
    output_path = Path(os.getcwd()) / "docs"
    output_path.mkdir(parents=True, exist_ok=True)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pdoc.pdoc(*MODULES, output_directory=output_path)
    x2 = time()
    print("output path:", output_path, file=sys.stderr)
    print(f"build time: {x2 - x1:.2f} seconds", file=sys.stderr)
