"""Smoke test for the wavefactor extension module.

Build the module first, for example::

    maturin develop -m crates/python/Cargo.toml

or::

    cargo build --release -p wavefactor-py --features extension-module
    cp target/release/libwavefactor.so python/wavefactor.so
"""

import math

import wavefactor as wf


def main():
    ghost = wf.evaluate_sum(21, 4, 4, kind="gauss")
    assert abs(ghost.magnitude - 1 / math.sqrt(2)) < 1e-12, ghost
    assert wf.evaluate_sum(35, 7, 16).magnitude == 1.0
    assert wf.evaluate_sum(35, 5, 9, kind="kummer", selection="odd").terms_used == 5
    assert wf.phase_fraction(2, 2, 21, 4) == 0.0

    assert wf.choose_truncation(999999) == 32
    assert wf.factorize(360).prime_factors == [2, 2, 2, 3, 3, 5]
    assert wf.factorize(999999).prime_factors == wf.oracle_factorize(999999)

    rows = wf.scan(21, terms=4, threshold=0.70)
    assert [(r.trial, r.verdict) for r in rows] == [(2, "NonFactor"), (3, "Factor"), (4, "Ghost")]
    assert rows[1].complement == 7

    assert wf.min_discriminating_terms(10609, kind="gauss") == 6
    try:
        wf.min_discriminating_terms(10403, kind="kummer", cap=200)
    except wf.NotSeparatedError:
        pass
    else:
        raise AssertionError("expected NotSeparatedError")
    try:
        wf.evaluate_sum(1, 2, 4)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    mzi = wf.Setup.mzi(8, 1.0, "7/1e6", "35/1e6", 2)
    assert mzi.canonical() == (35.0, 7.0, 8, "gauss", "all")
    assert abs(mzi.reading().normalized_magnitude - 1.0) < 1e-12
    beats = wf.Setup.beats(8, 15, 1, "1/3", selection="odd")
    sweep = dict(beats.sweep([2, 3, 4, 5]))
    assert sweep[3] == 1.0 and sweep[5] == 1.0 and sweep[4] < 0.75
    far = wf.Setup.faraday(16, 1, 21, "1/4", 2)
    assert abs(far.reading().normalized_magnitude - wf.evaluate_sum(21, 4, 16).magnitude) < 1e-9
    pulses = wf.Setup.pulses(16, "1/6", 35, 2)
    assert pulses.name == "pulses"
    print("wavefactor smoke test passed")


if __name__ == "__main__":
    main()
