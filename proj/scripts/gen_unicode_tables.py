#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from the unicodedata module.

The output holds four things: fully expanded canonical decompositions,
nonzero canonical combining classes, primary composition pairs (pairs that
recompose under NFC), and general-category ranges used for classifying
letters, marks, digits, punctuation, symbols and whitespace. Hangul
syllables are omitted; they are handled algorithmically.
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_S_BASE = 0xAC00
HANGUL_S_COUNT = 11172


def is_hangul_syllable(cp):
    return HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT


def canonical_nfd(cp):
    s = unicodedata.normalize("NFD", chr(cp))
    return [ord(c) for c in s]


def main(out_path):
    decomp = {}          # cp -> fully decomposed codepoint list
    ccc = {}             # cp -> nonzero combining class
    comp = {}            # (a, b) -> composite

    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        ch = chr(cp)
        k = unicodedata.combining(ch)
        if k:
            ccc[cp] = k
        if is_hangul_syllable(cp):
            continue
        nfd = canonical_nfd(cp)
        if nfd != [cp]:
            decomp[cp] = nfd
            # A pair decomposition recomposes iff NFC maps it back.
            raw = unicodedata.decomposition(ch)
            if raw and not raw.startswith("<"):
                parts = [int(x, 16) for x in raw.split()]
                if len(parts) == 2 and not is_hangul_syllable(parts[0]):
                    if unicodedata.normalize("NFC", chr(parts[0]) + chr(parts[1])) == ch:
                        comp[(parts[0], parts[1])] = cp

    # General category ranges.
    def cat_class(cp):
        if 0xD800 <= cp <= 0xDFFF:
            return None
        c = unicodedata.category(chr(cp))
        if c[0] == "L":
            return "L"
        if c[0] == "M":
            return "M"
        if c == "Nd":
            return "D"
        if c[0] == "P":
            return "P"
        if c[0] == "S":
            return "S"
        if c == "Zs" or cp in (0x09, 0x0A, 0x0B, 0x0C, 0x0D, 0x85, 0x2028, 0x2029):
            return "W"
        return None

    ranges = []
    cur = None
    for cp in range(MAX_CP):
        cls = cat_class(cp)
        if cur and cls == cur[2] and cp == cur[1] + 1:
            cur = (cur[0], cp, cls)
        else:
            if cur and cur[2]:
                ranges.append(cur)
            cur = (cp, cp, cls)
    if cur and cur[2]:
        ranges.append(cur)

    pool = []
    dentries = []
    for cp in sorted(decomp):
        seq = decomp[cp]
        dentries.append((cp, len(pool), len(seq)))
        pool.extend(seq)

    with open(out_path, "w") as f:
        w = f.write
        w("// Generated by scripts/gen_unicode_tables.py (UCD %s). Do not edit.\n\n"
          % unicodedata.unidata_version)

        w("static const char32_t kDecompPool[] = {\n")
        for i in range(0, len(pool), 12):
            w("  " + ", ".join("0x%X" % c for c in pool[i:i + 12]) + ",\n")
        w("};\n\n")

        w("static const DecompEntry kDecompEntries[] = {\n")
        for cp, off, n in dentries:
            w("  {0x%X, %d, %d},\n" % (cp, off, n))
        w("};\n\n")

        w("static const CccEntry kCccEntries[] = {\n")
        for cp in sorted(ccc):
            w("  {0x%X, %d},\n" % (cp, ccc[cp]))
        w("};\n\n")

        w("static const CompEntry kCompEntries[] = {\n")
        for (a, b) in sorted(comp):
            w("  {0x%X, 0x%X, 0x%X},\n" % (a, b, comp[(a, b)]))
        w("};\n\n")

        w("static const CatRange kCatRanges[] = {\n")
        for lo, hi, cls in ranges:
            w("  {0x%X, 0x%X, '%s'},\n" % (lo, hi, cls))
        w("};\n")

    sys.stderr.write(
        "decomp=%d pool=%d ccc=%d comp=%d ranges=%d\n"
        % (len(dentries), len(pool), len(ccc), len(comp), len(ranges)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/unicode_tables.inc")
