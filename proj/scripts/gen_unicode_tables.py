#!/usr/bin/env python3
"""Regenerate src/unicode_tables.cpp from the Python unicodedata module.

Usage: python3 scripts/gen_unicode_tables.py > src/unicode_tables.cpp
"""

import sys
import unicodedata

MAX_CP = 0x110000


def ranges(predicate):
    out = []
    start = None
    for cp in range(MAX_CP):
        if predicate(cp):
            if start is None:
                start = cp
        elif start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, MAX_CP - 1))
    return out


def emit_ranges(name, rs, f):
    f.write("const CodepointRange %s[] = {\n" % name)
    for i in range(0, len(rs), 4):
        row = ", ".join("{0x%X, 0x%X}" % r for r in rs[i : i + 4])
        f.write("    %s,\n" % row)
    f.write("};\n")
    f.write("const std::size_t %s_size = %d;\n\n" % (name, len(rs)))


def main():
    f = sys.stdout
    cat = [unicodedata.category(chr(cp)) for cp in range(MAX_CP)]

    number = ranges(lambda cp: cat[cp][0] == "N")
    punct = ranges(lambda cp: cat[cp][0] == "P")
    symbol = ranges(lambda cp: cat[cp][0] == "S")
    space = ranges(lambda cp: chr(cp).isspace())

    # Context-free lowercase mapping; the handful of 1:n expansions are
    # stored in a spill table.
    simple = []
    expansions = []
    for cp in range(MAX_CP):
        low = chr(cp).lower()
        if low == chr(cp):
            continue
        cps = [ord(c) for c in low]
        if len(cps) == 1:
            simple.append((cp, cps[0]))
        else:
            expansions.append((cp, cps))

    f.write("// Generated by scripts/gen_unicode_tables.py from Python's unicodedata\n")
    f.write("// (Unicode %s). Do not edit by hand.\n" % unicodedata.unidata_version)
    f.write("#include \"mteval/unicode_tables.hpp\"\n\n")
    f.write("namespace mteval::unicode_tables {\n\n")
    f.write("const char* unicode_version = \"%s\";\n\n" % unicodedata.unidata_version)

    emit_ranges("number_ranges", number, f)
    emit_ranges("punct_ranges", punct, f)
    emit_ranges("symbol_ranges", symbol, f)
    emit_ranges("space_ranges", space, f)

    f.write("const LowerEntry lower_entries[] = {\n")
    for i in range(0, len(simple), 4):
        row = ", ".join("{0x%X, 0x%X}" % e for e in simple[i : i + 4])
        f.write("    %s,\n" % row)
    f.write("};\n")
    f.write("const std::size_t lower_entries_size = %d;\n\n" % len(simple))

    f.write("const LowerExpansion lower_expansions[] = {\n")
    for cp, cps in expansions:
        padded = cps + [0] * (3 - len(cps))
        f.write(
            "    {0x%X, {0x%X, 0x%X, 0x%X}, %d},\n"
            % (cp, padded[0], padded[1], padded[2], len(cps))
        )
    f.write("};\n")
    f.write("const std::size_t lower_expansions_size = %d;\n\n" % len(expansions))

    f.write("}  // namespace mteval::unicode_tables\n")


if __name__ == "__main__":
    main()
