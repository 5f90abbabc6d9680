#!/usr/bin/env python3
"""Independent BLEU reference used to freeze expected values in tests.

Implements the scoring conventions directly from their definitions
(modified n-gram precision, exponential smoothing, brevity penalty,
13a-style tokenization) without consulting the C++ sources.
"""

import math
import sys
import unicodedata


def tokenize_13a(text):
    out = []
    chars = list(text.replace("\n", " ").replace("\r", " ").replace("\t", " "))
    n = len(chars)
    for i, ch in enumerate(chars):
        prev_digit = i > 0 and chars[i - 1].isascii() and chars[i - 1].isdigit()
        next_digit = (
            i + 1 < n and chars[i + 1].isascii() and chars[i + 1].isdigit()
        )
        cp = ord(ch)
        always = ch.isascii() and (
            0x21 <= cp <= 0x26
            or 0x28 <= cp <= 0x2B
            or 0x3A <= cp <= 0x40
            or 0x5B <= cp <= 0x60
            or 0x7B <= cp <= 0x7E
            or ch == "/"
        )
        if always:
            out.append(" %s " % ch)
        elif ch in ".," and not (prev_digit and next_digit):
            out.append(" %s " % ch)
        elif ch == "-" and prev_digit:
            out.append(" %s " % ch)
        elif cp >= 0x80 and unicodedata.category(ch)[0] in "PS":
            out.append(" %s " % ch)
        else:
            out.append(ch)
    return "".join(out).split()


def ngrams(tokens, n):
    counts = {}
    for i in range(len(tokens) - n + 1):
        g = tuple(tokens[i : i + n])
        counts[g] = counts.get(g, 0) + 1
    return counts


def stats(hyp_tokens, ref_tokens, max_n):
    matched = [0] * max_n
    total = [0] * max_n
    for n in range(1, max_n + 1):
        h = ngrams(hyp_tokens, n)
        r = ngrams(ref_tokens, n)
        total[n - 1] = sum(h.values())
        matched[n - 1] = sum(min(c, r.get(g, 0)) for g, c in h.items())
    return matched, total


def score(matched, total, hyp_len, ref_len, max_n, smoothing="exp"):
    effective = 0
    for n in range(max_n):
        if total[n] > 0:
            effective = n + 1
    if effective == 0:
        return 0.0
    log_sum = 0.0
    smooth_scale = 1.0
    for n in range(effective):
        if matched[n] > 0:
            p = matched[n] / total[n]
        elif smoothing == "exp":
            smooth_scale *= 2.0
            p = 1.0 / (smooth_scale * total[n])
        else:
            return 0.0
        log_sum += math.log(p)
    bp = 1.0
    if hyp_len < ref_len:
        bp = math.exp(1.0 - ref_len / hyp_len) if hyp_len > 0 else 0.0
    return bp * math.exp(log_sum / effective) * 100.0


def sentence_bleu(hyp, ref, max_n=4):
    h = tokenize_13a(hyp)
    r = tokenize_13a(ref)
    m, t = stats(h, r, max_n)
    return score(m, t, len(h), len(r), max_n)


def corpus_bleu(pairs, max_n=4):
    M = [0] * max_n
    T = [0] * max_n
    hl = rl = 0
    for hyp, ref in pairs:
        h = tokenize_13a(hyp)
        r = tokenize_13a(ref)
        m, t = stats(h, r, max_n)
        for n in range(max_n):
            M[n] += m[n]
            T[n] += t[n]
        hl += len(h)
        rl += len(r)
    return score(M, T, hl, rl, max_n)


FIXTURES = [
    ("the cat sat on the mat", "the cat sat on the mat"),
    ("the cat sat on the mat", "the cat was sitting on the mat"),
    ("the the the", "the cat"),
    ("a quick brown fox jumps over the lazy dog",
     "the quick brown fox jumped over the lazy dog"),
    ("Hello, world!", "Hello, world!"),
    ("Hello world", "Hello, world!"),
    ("It costs 3.5 dollars today", "It costs 3.5 dollars now"),
    ("short", "a much longer reference sentence here"),
    ("one two three four five six seven", "one two three four"),
    ("completely unrelated words here", "nothing matches at all anywhere"),
    ("the quick fox", "the quick brown fox"),
    ("a b c d e f g h", "a b c d e f g h"),
    ("a b c d", "d c b a"),
    ("New Delhi hosted the summit on 2019-05-10 .",
     "New Delhi hosted the summit on 2019-05-10 ."),
    ("India and Japan signed a pact", "India and Japan sign a pact"),
    ("rain in spain falls mainly on the plain",
     "the rain in spain stays mainly in the plain"),
    ("x", "x"),
    ("he said \"go home\" now", "he said \"go home\" immediately"),
    ("12,000 people attended", "12,000 people attended the event"),
    ("well-known issues remain", "well-known problems remain"),
]


def main():
    print("// sentence fixtures (hyp, ref, expected)")
    for hyp, ref in FIXTURES:
        s = sentence_bleu(hyp, ref)
        print('    {"%s", "%s", %.6f},' % (
            hyp.replace('"', '\\"'), ref.replace('"', '\\"'), s))
    corpus = corpus_bleu(FIXTURES)
    print("// corpus over all fixtures: %.6f" % corpus)
    two = corpus_bleu(FIXTURES[:2])
    print("// corpus over first two: %.6f" % two)
    print("// tokenize checks:")
    for t in ["Hello, world!", "3.5", "", "12,000 people", "well-known",
              "high-tech", "7-8", "a—b", "क। ख।"]:
        print("//   %r -> %r" % (t, tokenize_13a(t)))


if __name__ == "__main__":
    sys.exit(main())
