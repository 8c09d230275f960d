"""Optional figure output for the demo scripts.

Figures are written only when matplotlib is installed and NOONLAB_DEMO_OUT
names a directory.
"""

import os


def figure_dir():
    out = os.environ.get("NOONLAB_DEMO_OUT")
    if not out:
        return None
    try:
        import matplotlib
    except ImportError:
        return None
    matplotlib.use("Agg")
    os.makedirs(out, exist_ok=True)
    return out
