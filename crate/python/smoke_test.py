"""Smoke test for the `sugawara` extension module.

Build it with `maturin develop -m crates/python/Cargo.toml`, or with
`cargo build --release -p sugawara-py`; in the second case this script
loads target/release/libsugawara.so directly.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys


def load():
    try:
        import sugawara

        return sugawara
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        for name in ("libsugawara.so", "libsugawara.dylib", "sugawara.dll"):
            path = root / "target" / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("sugawara", str(path))
                spec = importlib.util.spec_from_file_location("sugawara", path, loader=loader)
                mod = importlib.util.module_from_spec(spec)
                loader.exec_module(mod)
                sys.modules["sugawara"] = mod
                return mod
    sys.exit("sugawara extension not found; build crates/python first")


def main():
    sg = load()

    g = sg.LieAlgebra.sl(2)
    assert g.dimension == 3 and g.dual_coxeter == 2
    assert g.bracket("E12", "E21") == {"H1": "1"}
    assert all(v is None for _, v in g.invariant_violations())

    k = sg.RationalFunction("k")
    assert str(k * k - k * k) == "0"
    assert (k / (k + sg.RationalFunction("2"))).subs("k", "2") == sg.RationalFunction("1/2")

    km = sg.VacuumModule("kac-moody", "sl2", 0, 6)
    assert [km.dimension(w) for w in range(7)] == [1, 3, 9, 22, 51, 108, 221]
    assert sg.generating_function(3, False, 6) == [1, 3, 9, 22, 51, 108, 221]

    vac = km.vacuum()
    f = km.apply("J[a=E21,m=-1]", vac)
    assert km.apply("J[a=E12,m=1]", f) == "k * |0;n=0>"

    s = sg.Sugawara(km)
    assert s.central_charge() == sg.RationalFunction("3*k/(k+2)")
    v = s.mode(2, s.mode(-2, vac))
    assert km.coefficient(v, "|0;n=0>") == sg.RationalFunction("3*k/(2*(k+2))")

    sd = sg.VacuumModule("semidirect", "sl2", 0, 6)
    ss = sg.Sugawara(sd)
    sv = ss.singular_vector()
    for m in range(5):
        for a in g.labels:
            assert sd.apply(f"J[a={a},m={m}]", sv) == "0"

    try:
        km.apply("J[a=E21,m=-7]", vac)
    except sg.TruncationError:
        pass
    else:
        raise AssertionError("expected TruncationError")

    try:
        sg.Sugawara(sg.VacuumModule("kac-moody", params={"k": "-2"}))
    except sg.CriticalLevelError:
        pass
    else:
        raise AssertionError("expected CriticalLevelError")

    report = json.loads(sg.run_suite("sugawara", degree=4, mode_range=2))
    assert report["schema_version"] == sg.SCHEMA_VERSION
    assert report["aggregate_pass"], [c for c in report["checks"] if not c["pass"]][:1]

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
