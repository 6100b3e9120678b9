#!/usr/bin/env python3
"""Convert LaTeX Euler-sum formulas into the line-oriented corpus format.

Reads LaTeX on stdin. Recognised left-hand sides:

    \\sum_{k=1}^\\infty \\frac{H(k)^{m}}{<denominator>} &= <rhs>
    {\\cal I}_h(m,n) &= <rhs>

The right-hand side is either a bare signed term list or
``\\frac{1}{L}\\left( ... \\right)``. Terms are products of ``\\zeta(n)``,
``\\zeta(n)^p``, ``\\log(2)``, ``\\log(2)^p`` and ``M(a,b)`` / ``{\\cal I}(a,b)``.

Usage: latex2efm.py --src TAG < input.tex > output.efm
"""

import argparse
import re
import sys
from fractions import Fraction

NOISE = [r"\nonumber", r"\left.", r"\right.", r"\hspace{1em}", r"\hspace{2em}", "&", r"\,"]


def clean(text):
    text = re.sub(r"\\nonumber\s*\\\\", " ", text)
    for n in NOISE:
        text = text.replace(n, " ")
    text = text.replace(r"{\cal I}_h", "I").replace(r"{\cal I}", "I").replace(r"{ \cal I}", "I")
    text = re.sub(r"\\label\{[^}]*\}", " ", text)
    return text


def parse_den(den):
    """Return list of (a, b, e) factors for a LaTeX denominator."""
    factors = []
    pos = 0
    den = den.replace(" ", "")
    pat = re.compile(r"(k|\((\d*)k\+(\d+)\))(?:\^\{?(\d+)\}?)?")
    while pos < len(den):
        m = pat.match(den, pos)
        if not m:
            raise ValueError("bad denominator %r at %d" % (den, pos))
        e = int(m.group(4)) if m.group(4) else 1
        if m.group(1) == "k":
            a, b = 1, 0
        else:
            a = int(m.group(2)) if m.group(2) else 1
            b = int(m.group(3))
        factors.append((a, b, e))
        pos = m.end()
    return factors


def lhs_text(power, factors):
    if all(a == 1 for a, _, _ in factors):
        exps = {}
        for _, b, e in factors:
            exps[b] = exps.get(b, 0) + e
        top = max(exps)
        return "M(%d;%s)" % (power, ",".join(str(exps.get(i, 0)) for i in range(top + 1)))
    parts = ",".join("(%d,%d,%d)" % f for f in sorted(factors))
    return "S(%d;%s)" % (power, parts)


ATOM = re.compile(r"\\zeta\s*\((\d+)\)(?:\^\{?(\d+)\}?)?|\\log\(2\)(?:\^\{?(\d+)\}?)?|(?:M|I)\s*[_(]\s*\(?(\d+),\s*(\d+)\)(?:\^\{?(\d+)\}?)?")


def parse_terms(body):
    body = body.strip()
    terms = []
    # split on top-level signs
    chunks = re.findall(r"[+-]?[^+-]+", re.sub(r"\s+", "", body))
    for chunk in chunks:
        sign = -1 if chunk.startswith("-") else 1
        chunk = chunk.lstrip("+-")
        m = re.match(r"\\frac\{(\d+)\}\{(\d+)\}|(\d+)?(?:/(\d+))?", chunk)
        if m.group(1):
            coef = Fraction(int(m.group(1)), int(m.group(2)))
        else:
            coef = Fraction(int(m.group(3)) if m.group(3) else 1, int(m.group(4)) if m.group(4) else 1)
        rest = chunk[m.end():]
        atoms = []
        pos = 0
        while pos < len(rest):
            am = ATOM.match(rest, pos)
            if not am:
                raise ValueError("bad term %r" % chunk)
            if am.group(1):
                atoms.append(("z%s" % am.group(1), int(am.group(2) or 1)))
            elif am.group(0).startswith("\\log"):
                atoms.append(("log2", int(am.group(3) or 1)))
            else:
                atoms.append(("M(%s,%s)" % (am.group(4), am.group(5)), int(am.group(6) or 1)))
            pos = am.end()
        terms.append((sign * coef, atoms))
    return terms


def parse_rhs(rhs):
    rhs = rhs.strip().rstrip("\\").strip().rstrip(".").rstrip(",").strip()
    m = re.match(r"\\frac\{\s*(\d+)\}\{\s*(\d+)\}\s*\\left\((.*)\\right\)\s*$", rhs, re.S)
    scale = Fraction(1)
    if m:
        scale = Fraction(int(m.group(1)), int(m.group(2)))
        rhs = m.group(3)
    return [(c * scale, atoms) for c, atoms in parse_terms(rhs)]


def render_terms(terms):
    out = []
    for coef, atoms in terms:
        mono = "*".join(a if p == 1 else "%s^%d" % (a, p) for a, p in atoms)
        mag = abs(coef)
        mag_s = str(mag.numerator) if mag.denominator == 1 else "%d/%d" % (mag.numerator, mag.denominator)
        if mono:
            piece = mono if mag == 1 else "%s*%s" % (mag_s, mono)
        else:
            piece = mag_s
        if not out:
            out.append(piece if coef > 0 else "-" + piece)
        else:
            out.append(("+ " if coef > 0 else "- ") + piece)
    return " ".join(out) if out else "0"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--src", required=True)
    args = ap.parse_args()
    text = clean(sys.stdin.read())
    entries = re.split(r"(?=\\sum_\{k=1\}\^\\infty)|(?=\bI\(\d+,\d+\)\s*=)", text)
    for entry in entries:
        entry = entry.strip()
        sm = re.match(r"\\sum_\{k=1\}\^\\infty\s*\\frac\{H\(k\)(?:\^\{?(\d+)\}?)?\}\{(.*?)\}\s*=(.*)", entry, re.S)
        im = re.match(r"I\((\d+),(\d+)\)\s*=(.*)", entry, re.S)
        if sm:
            power = int(sm.group(1) or 1)
            factors = parse_den(sm.group(2))
            rhs = sm.group(3)
        elif im:
            power = int(im.group(1))
            factors = [(1, 0, int(im.group(2)))]
            rhs = im.group(3)
        else:
            continue
        # the rhs ends at the first row break or environment end
        rhs = re.split(r"\\\\|\\end\{align\}", rhs)[0]
        if not rhs.strip() or rhs.strip().startswith("\\sum"):
            continue
        try:
            terms = parse_rhs(rhs.strip().rstrip("\\"))
        except ValueError as err:
            print("skipped %s: %s" % (lhs_text(power, factors), err), file=sys.stderr)
            continue
        print("%s = %s ; src=%s" % (lhs_text(power, factors), render_terms(terms), args.src))


if __name__ == "__main__":
    main()
