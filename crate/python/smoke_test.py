#!/usr/bin/env python3
"""Smoke test for the delpezzo_py extension module.

Builds nothing itself: run `cargo build -p delpezzo-py` (or --release)
first, then `python3 python/smoke_test.py`. The script locates the built
shared library, imports it, and exercises the main surface of the API.
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def locate_library() -> Path:
    candidates = [
        REPO / "target" / "release" / "libdelpezzo_py.so",
        REPO / "target" / "debug" / "libdelpezzo_py.so",
        REPO / "target" / "release" / "libdelpezzo_py.dylib",
        REPO / "target" / "debug" / "libdelpezzo_py.dylib",
    ]
    for path in candidates:
        if path.exists():
            return path
    sys.exit("library not found; run `cargo build -p delpezzo-py` first")


def import_module():
    lib = locate_library()
    stage = Path(tempfile.mkdtemp(prefix="delpezzo_py_"))
    suffix = ".so" if lib.suffix == ".so" else ".so"  # CPython loads .so on mac too
    shutil.copy2(lib, stage / f"delpezzo_py{suffix}")
    sys.path.insert(0, str(stage))
    import delpezzo_py

    return delpezzo_py


def main() -> None:
    dp = import_module()
    print(f"delpezzo_py {dp.__version__} loaded")

    # polynomial arithmetic is exact and canonical
    ctx = dp.VariableContext(["x0", "x1", "x2"], ["a", "b"])
    x0, x1, x2, a, b = ctx.vars()
    f = x0 * x1 - x2 ** 2
    assert str(f) == "x0*x1 - x2^2", str(f)
    assert f.homogeneity() == (True, 2)
    half = ctx.constant("1/2")
    assert str(half.scale(2)) == "1", "exact rational arithmetic"

    # the first quadric of the D5 quartic is literally fixed by the action
    image = f.substitute(
        {
            "x0": x0,
            "x1": a ** 2 * x0 + x1 + a.scale(2) * x2,
            "x2": a * x0 + x2,
        }
    )
    assert image == f, "translation image of the quadric must be itself"

    # group laws: additive ones hold, the semidirect law needs the twist
    assert dp.tau().check_group_law()
    assert dp.rho().check_group_law()
    for surface, rep in (dp.d5_quartic(), dp.a3_quintic(), dp.a3a1_quartic()):
        assert rep.check_group_law(), rep.name
        assert surface.is_invariant_under(rep), surface.name
    _, semidirect = dp.a3a1_quartic()
    assert not semidirect.check_untwisted_law(), "untwisted law must fail"

    # fixed points: the D5 singularity is fixed, a generic point is not
    _, d5 = dp.d5_quartic()
    assert d5.is_fixed_point([0, 0, 0, 0, 1])
    assert not d5.is_fixed_point([1, 0, 0, 0, 0])

    # the lines of the semidirect quartic are invariant
    surface, rep = dp.a3a1_quartic()
    assert surface.line_count == 3
    assert surface.lines_invariant_under(rep)

    # the E6 cubic carries no action; its data is still consistent
    e6 = dp.e6_cubic()
    assert e6.singular_points == ([["0", "1", "0", "0"], "E6"],) or len(
        e6.singular_points
    ) == 1

    # catalog and graph exports
    rows = json.loads(dp.catalog_json())
    assert len(rows) == 40
    d5_rows = [r for r in rows if r["symbol"] == "D5" and r["degree"] == 4]
    assert d5_rows and d5_rows[0]["additive"] and not d5_rows[0]["toric"]
    dot = dp.blowup_graph_dot()
    assert '"3/E6" -> "4/D5";' in dot

    # the full verification suite passes
    report = json.loads(dp.run_suite())
    assert report["overall_pass"], "verification suite must pass"
    assert all(c["outcome"] == "pass" for c in report["checks"])
    print(f"suite: {len(report['checks'])} checks, all pass")

    # filtered run and its error path
    subset = json.loads(dp.run_suite("e6*"))
    assert subset["overall_pass"] and len(subset["checks"]) >= 3
    try:
        dp.run_suite("no-such-check")
    except ValueError:
        pass
    else:
        sys.exit("expected a ValueError for an unmatched filter")

    print("smoke test OK")


if __name__ == "__main__":
    main()
