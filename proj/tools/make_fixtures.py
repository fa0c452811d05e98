#!/usr/bin/env python3
"""Regenerate the cached newform fixtures offline with PARI (cypari2).

Orbits are labelled the way the LMFDB does for trivial character: sort by
dimension, then lexicographically by the trace sequence.  Irrational orbits
are stored under the embedding given by the smallest real root of the
coefficient field polynomial.

    pip install --only-binary :all: cypari2
    python3 tools/make_fixtures.py fixtures/newforms [--mock tests/data/lmfdb]
"""
import argparse
import json
import math
import os
import sys

import cypari2
import mpmath

DIGITS = 160
TRACE_TERMS = 40

# (level, weight, orbit letter)
WANTED = [
    (7, 4, "a"), (8, 8, "b"), (13, 10, "a"), (17, 6, "c"), (19, 6, "d"),
    (4, 26, "a"), (16, 12, "a"), (16, 12, "b"), (23, 10, "a"), (2, 40, "a"),
    (146, 6, "a"), (455, 4, "a"), (1, 84, "a"),
]
MOCK = ["7.4.a.a", "4.26.a.a"]

pari = cypari2.Pari()
pari.allocatemem(4 * 10**9)
pari.set_real_precision(DIGITS + 40)
mpmath.mp.dps = DIGITS + 30


def coefficient_count(level, weight, bits=560):
    # crude version of the C++ truncation budget, deliberately generous
    c = 2 * math.pi / math.sqrt(level)
    lg = math.lgamma(weight - 1) + math.log(4 * math.e)
    n = 1
    while weight / 2 * math.log(n) - c * n + lg > -bits * math.log(2) or c * n < 2 * (weight - 2):
        n += 1
    return max(int(n * 1.1) + 20, 600)


def letter(i):
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = chr(ord("a") + r) + s
    return s


def orbits(level, weight):
    mf = pari.mfinit([level, weight], 0)
    basis = pari.mfeigenbasis(mf)
    fields = pari.mffields(mf)
    signs = pari.mfatkineigenvalues(mf, level)
    out = []
    for f, fld, sg in zip(basis, fields, signs):
        coefs = pari.mfcoefs(f, TRACE_TERMS)
        deg = int(pari.poldegree(fld))
        traces = [int(pari.trace(c)) if deg > 1 else int(c) for c in list(coefs)[1:]]
        out.append((deg, traces, f, fld, int(sg[0])))
    out.sort(key=lambda o: (o[0], o[1]))
    return mf, out


def fmt_real(x):
    v = mpmath.mpf(str(x).replace(" E", "e"))
    if v == 0:
        return "0"
    return mpmath.nstr(v, DIGITS, min_fixed=1, max_fixed=0, strip_zeros=False)


def build(level, weight, want):
    mf, orbs = orbits(level, weight)
    idx = ord(want) - ord("a")
    deg, _traces, f, fld, sign = orbs[idx]
    label = f"{level}.{weight}.a.{letter(idx)}"
    count = coefficient_count(level, weight)
    coefs = list(pari.mfcoefs(f, count))[1:]
    fe = sign if weight % 4 == 0 else -sign
    rec = {"label": label, "level": level, "weight": weight,
           "fricke_sign": sign, "fe_sign": fe}
    raw = None
    if deg == 1:
        rec["coeff_kind"] = "rational"
        rec["an"] = [str(c) for c in coefs]
    else:
        roots = [r for r in pari(f"polroots({fld})") if abs(pari.imag(r)) < pari("1e-100")]
        roots = sorted((pari.real(r) for r in roots), key=lambda r: float(r))
        if not roots:
            raise SystemExit(f"{label}: no real embedding")
        nu = roots[0]
        rec["coeff_kind"] = "embedded"
        rec["precision_decimal_digits"] = DIGITS
        an = []
        for c in coefs:
            p = pari.lift(c)
            an.append(fmt_real(pari.subst(p, "y", nu)))
        rec["an"] = an
        raw = (fld, coefs)
    return rec, raw, deg


def mock_records(rec, raw, deg):
    # shaped like the mf_newforms / mf_hecke_nf API rows
    label = rec["label"]
    if raw is None:
        field_poly = [0, 1]
        an = [[int(x)] for x in rec["an"]]
        num, den = [[1]], [1]
    else:
        fld, coefs = raw
        field_poly = [int(pari.polcoef(fld, i)) for i in range(deg + 1)]
        lifted = [pari.lift(c) for c in coefs]
        d = 1
        for p in lifted:
            for i in range(deg):
                d = math.lcm(d, int(pari.denominator(pari.polcoef(p, i, "y"))))
        an = [[int(pari.polcoef(p, i, "y") * d) for i in range(deg)] for p in lifted]
        num = [[1 if i == j else 0 for j in range(deg)] for i in range(deg)]
        den = [d] * deg
    nf = {"label": label, "level": rec["level"], "weight": rec["weight"],
          "dim": deg, "fricke_eigenval": rec["fricke_sign"],
          "field_poly": field_poly, "char_order": 1}
    hk = {"label": label, "field_poly": field_poly, "an": an,
          "hecke_ring_numerators": num, "hecke_ring_denominators": den,
          "hecke_ring_power_basis": True}
    return {"data": [nf]}, {"data": [hk]}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    ap.add_argument("--mock")
    ap.add_argument("--only")
    a = ap.parse_args()
    os.makedirs(a.out, exist_ok=True)
    for level, weight, want in WANTED:
        tag = f"{level}.{weight}.a.{want}"
        if a.only and a.only != tag:
            continue
        rec, raw, deg = build(level, weight, want)
        path = os.path.join(a.out, rec["label"] + ".json")
        with open(path, "w") as fh:
            json.dump(rec, fh, indent=2)
            fh.write("\n")
        print(rec["label"], rec["coeff_kind"], "eps", rec["fricke_sign"], "M", len(rec["an"]), file=sys.stderr)
        if a.mock and rec["label"] in MOCK:
            os.makedirs(a.mock, exist_ok=True)
            nf, hk = mock_records(rec, raw, deg)
            with open(os.path.join(a.mock, rec["label"] + ".mf_newforms.json"), "w") as fh:
                json.dump(nf, fh)
            with open(os.path.join(a.mock, rec["label"] + ".mf_hecke_nf.json"), "w") as fh:
                json.dump(hk, fh)


if __name__ == "__main__":
    main()
