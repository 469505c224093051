#!/usr/bin/env python3
"""Convert a flat gate-level Verilog netlist (and/or/nand/nor/not/buf
primitives) into a combinational ASCII AIGER file.

Usage: verilog_to_aag.py input.v output.aag
"""
import re
import sys


def parse(text):
    text = re.sub(r"//.*", "", text)
    text = re.sub(r"/\*.*?\*/", "", text, flags=re.S)
    # Escaped identifiers: "\a[0] " -> "a[0]"
    text = re.sub(r"\\(\S+)\s", r"\1 ", text)
    stmts = [s.strip() for s in text.split(";")]
    inputs, outputs, gates = [], [], {}
    for s in stmts:
        if not s or s.startswith("module") or s == "endmodule":
            continue
        kw = s.split(None, 1)[0]
        if kw in ("input", "output", "wire"):
            names = [n.strip() for n in s.split(None, 1)[1].split(",")]
            if kw == "input":
                inputs += names
            elif kw == "output":
                outputs += names
            continue
        m = re.match(r"(\w+)\s+\w+\s*\((.*)\)\s*$", s, re.S)
        if not m:
            raise ValueError("unrecognized statement: " + s[:80])
        pins = [p.strip() for p in m.group(2).split(",")]
        gates[pins[0]] = (m.group(1), pins[1:])
    return inputs, outputs, gates


def convert(inputs, outputs, gates):
    lit = {name: 2 * (i + 1) for i, name in enumerate(inputs)}
    ands = []
    next_var = [len(inputs) + 1]

    def mk_and(a, b):
        v = next_var[0]
        next_var[0] += 1
        ands.append((2 * v, a, b))
        return 2 * v

    def and_tree(lits):
        while len(lits) > 1:
            nxt = [mk_and(lits[i], lits[i + 1]) for i in range(0, len(lits) - 1, 2)]
            if len(lits) % 2:
                nxt.append(lits[-1])
            lits = nxt
        return lits[0]

    sys.setrecursionlimit(100000)

    def resolve(name):
        if name in lit:
            return lit[name]
        kind, args = gates[name]
        a = [resolve(x) for x in args]
        if kind == "and":
            r = and_tree(a)
        elif kind == "nand":
            r = and_tree(a) ^ 1
        elif kind == "or":
            r = and_tree([x ^ 1 for x in a]) ^ 1
        elif kind == "nor":
            r = and_tree([x ^ 1 for x in a])
        elif kind == "not":
            r = a[0] ^ 1
        elif kind == "buf":
            r = a[0]
        else:
            raise ValueError("unsupported gate " + kind)
        lit[name] = r
        return r

    out_lits = [resolve(o) for o in outputs]
    return next_var[0] - 1, ands, out_lits


def main():
    src, dst = sys.argv[1], sys.argv[2]
    with open(src) as f:
        inputs, outputs, gates = parse(f.read())
    max_var, ands, out_lits = convert(inputs, outputs, gates)
    with open(dst, "w") as f:
        f.write(f"aag {max_var} {len(inputs)} 0 {len(outputs)} {len(ands)}\n")
        for i in range(len(inputs)):
            f.write(f"{2 * (i + 1)}\n")
        for o in out_lits:
            f.write(f"{o}\n")
        for lhs, a, b in ands:
            f.write(f"{lhs} {max(a, b)} {min(a, b)}\n")
        for i, n in enumerate(inputs):
            f.write(f"i{i} {n}\n")
        for i, n in enumerate(outputs):
            f.write(f"o{i} {n}\n")


if __name__ == "__main__":
    main()
