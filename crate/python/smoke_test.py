"""Smoke test for the mubforge Python extension.

Build and install first, e.g.:
    maturin build --release -m crates/python/Cargo.toml -o dist && pip install dist/mubforge-*.whl
Then run:
    python python/smoke_test.py
"""

import json

import mubforge


def main():
    x, y = mubforge.PauliOperator("X"), mubforge.PauliOperator("Y")
    assert str(x * y) == "iZ"
    assert not x.commutes(y)

    complete = mubforge.canonical_complete_set(2)
    assert len(complete) == 5 and complete.is_complete()
    assert complete.max_unbiasedness_deviation() < 1e-12

    triple = complete.select([0, 1, 2])
    (extra,) = triple.extra_classes_within_union()
    assert sorted(extra.elements) == ["IZ", "XI", "XZ"]

    weak = mubforge.example("paper-d4-weak")
    assert weak.extendibility_check() == []
    assert sorted(weak.leftover_operators()) == ["IX", "XX", "YX", "ZI", "ZY", "ZZ"]

    second, report = mubforge.ks_report(weak)
    assert [c.elements for c in second.classes][0] == ["YY", "ZX", "XZ"]
    assert report["minus_identity"] == 1 and report["odd_parity"]

    eur = mubforge.eur_check(weak, mubforge.CommutingClass.from_elements(["YY", "ZX", "XZ"]))
    assert eur["saturated"]

    outcome = mubforge.strong_unext_search(mubforge.example("paper-d4-strong"), starts=100, seed=1)
    assert outcome["min_residual"] > 1e-3

    basis = mubforge.CommutingClass.from_elements(["ZI", "IZ", "ZZ"]).eigenbasis()
    assert all(sorted(round(abs(a), 12) for a in v) == [0.0, 0.0, 0.0, 1.0] for v in basis)

    cert = mubforge.complete_set_certificate(3)
    assert json.loads(cert)["verified"]
    assert mubforge.check_certificate(cert) == []
    try:
        mubforge.check_certificate(cert[:50])
    except ValueError:
        pass
    else:
        raise AssertionError("truncated certificate accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
