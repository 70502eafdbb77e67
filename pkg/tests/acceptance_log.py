"""Collects one pass/fail line per acceptance criterion."""

RESULTS = {}


def record(k, ok, note=""):
    RESULTS[k] = (ok, note)
    print("criterion %d: %s" % (k, note if ok is None else ("PASS" if ok else "FAIL")))
