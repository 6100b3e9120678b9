#!/usr/bin/env python3
"""Assemble the committed corpus files from converter output.

usage: build_data.py APPENDIX.efm BASIC.efm LOG2.efm OUTDIR

Records listed in sign_fixes.txt are printed in the source with the wrong
overall sign; they are written as "LHS = -(RHS)" and flagged in a comment.
"""
import os
import re
import sys
from collections import defaultdict

LHS = re.compile(r"^([MS])\((\d+);(.*?)\)\s*=")


def order_of(line):
    m = LHS.match(line)
    if m.group(1) == "S":
        return None
    h = int(m.group(2))
    return h + sum(int(x) for x in m.group(3).split(","))


def strip_src(line):
    return line.split(" ; src=")[0].strip()


FIXED = set()


def load_fixes():
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "sign_fixes.txt")
    fixes, section = defaultdict(set), None
    for l in open(path):
        l = l.strip()
        if not l or l.startswith("#"):
            continue
        if l.startswith("["):
            section = l.strip("[]")
        else:
            fixes[section].add(l)
    return fixes


def apply_fixes(lines, wanted):
    out = []
    for l in lines:
        lhs, rhs = l.split(" = ", 1)
        if lhs in wanted:
            l = f"{lhs} = -({rhs})"
            FIXED.add(l)
        out.append(l)
    return out


def note(l):
    return "  # sign corrected" if l in FIXED else ""


def main():
    app, basic, log2, out = sys.argv[1:5]
    fixes = load_fixes()
    app_lines = apply_fixes([strip_src(l) for l in open(app) if l.strip()], fixes["appendix"])
    by_order = defaultdict(list)
    for l in app_lines:
        by_order[order_of(l)].append(l)

    with open(f"{out}/appendix.efm", "w") as f:
        f.write("# mixed Euler sums of order 3 to 12 (integer shifts)\n")
        for r in sorted(by_order):
            f.write(f"\n# order {r}\n")
            for l in by_order[r]:
                f.write(f"{l} ; src=order-{r}{note(l)}\n")

    lhs_of = lambda l: l.split(" =")[0]
    app_by_lhs = {lhs_of(l): l for l in app_lines}
    basic_lines = apply_fixes([strip_src(l) for l in open(basic) if l.strip()], fixes["basic"])
    have = {lhs_of(l) for l in basic_lines}
    # basic sums from the appendix that the basic list lacks (incl. typo'd ones)
    for l in app_lines:
        lhs = lhs_of(l)
        if re.fullmatch(r"M\(\d+;\d+\)", lhs) and lhs not in have:
            rhs = l.split("= ", 1)[1]
            if rhs == lhs.replace(";", ",")[0:]:
                continue
            if re.fullmatch(r"M\(\d+,\d+\)", rhs):
                continue
            basic_lines.append(l)
            have.add(lhs)
    basic_lines.sort(key=lambda l: (order_of(l), int(LHS.match(l).group(2))))

    # knowledge: basic sums and s_h sums
    with open(f"{out}/knowledge.efm", "w") as f:
        f.write("# basic sums I(m,n) = M(m;n) and s_h(m,n) = M(m;0,n)\n")
        for l in basic_lines:
            f.write(f"{l} ; src=basic{note(l)}\n")
        f.write("\n")
        for l in app_lines:
            if re.fullmatch(r"M\(\d+;0,\d+\)", lhs_of(l)):
                f.write(f"{l} ; src=shifted{note(l)}\n")

    log2_lines = [strip_src(l) for l in open(log2) if l.strip()]
    with open(f"{out}/core.efm", "w") as f:
        f.write("# curated verification corpus\n\n# basic sums, orders 3 to 12\n")
        for l in basic_lines:
            f.write(f"{l} ; src=basic{note(l)}\n")
        f.write("\n# affine denominators\n")
        for l in log2_lines:
            f.write(f"{l} ; src=log2\n")
        for r in sorted(by_order):
            items = by_order[r]
            if r > 4:
                # spread sample, skipping records already listed as basic
                items = [l for l in items if lhs_of(l) not in have]
                step = max(1, len(items) // 6)
                items = items[::step][:6]
            f.write(f"\n# order {r}\n")
            for l in items:
                f.write(f"{l} ; src=order-{r}{note(l)}\n")


main()
