# Copyright 2026 The t2t Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Brute-force reference values for the metric fixtures.

Written independently of the C++ scorer: plain Counter arithmetic for BLEU
and chrF++, and an exhaustive breadth-first search over every sequence of
block moves for TER (feasible because fixture segments have at most six
tokens). Prints the expected-values JSON the unit tests pin.

usage: metric_oracle.py PAIRS_JSON [--check EXPECTED_JSON]
"""

import argparse
import json
import math
import string
import sys
from collections import Counter, deque

PUNCT = set(string.punctuation) | {chr(c) for c in (0xA1, 0xA7, 0xAB, 0xB6, 0xB7, 0xBB, 0xBF)}
PUNCT |= {chr(c) for c in range(0x2010, 0x2028)}


def tokens(text):
    out = []
    for chunk in text.split():
        word = ""
        for ch in chunk:
            if ch in PUNCT:
                if word:
                    out.append(word)
                    word = ""
                out.append(ch)
            else:
                word += ch
        if word:
            out.append(word)
    return out


def ngrams(seq, n):
    return Counter(tuple(seq[i:i + n]) for i in range(len(seq) - n + 1))


# ---- BLEU ----

def bleu(pairs):
    matched = [0] * 4
    total = [0] * 4
    hyp_len = ref_len = 0
    for hyp, refs in pairs:
        h = tokens(hyp)
        rs = [tokens(r) for r in refs]
        for n in range(1, 5):
            counts = ngrams(h, n)
            cap = Counter()
            for r in rs:
                cap |= ngrams(r, n)
            matched[n - 1] += sum(min(c, cap[g]) for g, c in counts.items())
            total[n - 1] += sum(counts.values())
        hyp_len += len(h)
        ref_len += min((abs(len(r) - len(h)), len(r)) for r in rs)[1]
    if any(m == 0 for m in matched):
        return 0.0
    log_p = sum(math.log(m / t) for m, t in zip(matched, total)) / 4
    bp = 1.0 if hyp_len > ref_len else math.exp(1 - ref_len / hyp_len)
    return 100 * bp * math.exp(log_p)


def sentence_bleu(hyp, refs):
    """Diagnostic variant: add-one smoothing for orders 2..4."""
    h = tokens(hyp)
    rs = [tokens(r) for r in refs]
    if not h:
        return 0.0
    logs = []
    for n in range(1, 5):
        counts = ngrams(h, n)
        cap = Counter()
        for r in rs:
            cap |= ngrams(r, n)
        m = sum(min(c, cap[g]) for g, c in counts.items())
        t = sum(counts.values())
        if n == 1:
            if m == 0:
                return 0.0
            logs.append(math.log(m / t))
        else:
            logs.append(math.log((m + 1) / (t + 1)))
    r = min((abs(len(x) - len(h)), len(x)) for x in rs)[1]
    bp = 1.0 if len(h) > r else math.exp(1 - r / len(h))
    return 100 * bp * math.exp(sum(logs) / 4)


# ---- chrF++ ----

def chrf_counts(hyp, ref):
    hc = [ch for ch in hyp if not ch.isspace()]
    rc = [ch for ch in ref if not ch.isspace()]
    hw, rw = tokens(hyp), tokens(ref)
    rows = []
    for seq_h, seq_r, orders in ((hc, rc, 6), (hw, rw, 2)):
        for n in range(1, orders + 1):
            a, b = ngrams(seq_h, n), ngrams(seq_r, n)
            rows.append([sum((a & b).values()), sum(a.values()), sum(b.values())])
    return rows


def chrf_from(rows):
    f_sum = 0.0
    for m, h, r in rows:
        p = m / h if h else 0.0
        rec = m / r if r else 0.0
        if p + rec > 0:
            f_sum += 5 * p * rec / (4 * p + rec)
    return f_sum / len(rows)


def chrf(pairs):
    total = [[0, 0, 0] for _ in range(8)]
    for hyp, refs in pairs:
        best = None
        for r in refs:
            rows = chrf_counts(hyp, r)
            if best is None or chrf_from(rows) > chrf_from(best):
                best = rows
        for acc, row in zip(total, best):
            for k in range(3):
                acc[k] += row[k]
    return chrf_from(total)


# ---- TER ----

def levenshtein(a, b):
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        for j, y in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def moves(seq):
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n + 1):
            block, rest = seq[i:j], seq[:i] + seq[j:]
            for k in range(len(rest) + 1):
                if k != i:
                    yield rest[:k] + block + rest[k:]


def min_edits(hyp, ref):
    start = tuple(hyp)
    seen = {start: 0}
    queue = deque([start])
    best = levenshtein(start, ref)
    while queue:
        state = queue.popleft()
        depth = seen[state]
        best = min(best, depth + levenshtein(state, ref))
        if depth + 1 >= best:
            continue
        for nxt in moves(state):
            if nxt not in seen:
                seen[nxt] = depth + 1
                queue.append(nxt)
    return best


def ter(pairs):
    edits = words = 0
    for hyp, refs in pairs:
        h = tokens(hyp)
        scored = [(min_edits(h, tokens(r)), len(tokens(r))) for r in refs]
        e, w = min(scored, key=lambda s: s[0])
        edits += e
        words += w
    return edits / words


def evaluate(pairs):
    return {"bleu": bleu(pairs), "chrf": chrf(pairs), "ter": ter(pairs)}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("pairs")
    ap.add_argument("--check", help="compare against a frozen expected file instead of printing")
    args = ap.parse_args()
    with open(args.pairs, encoding="utf-8") as f:
        pairs = [(p["hypothesis"], p["references"]) for p in json.load(f)["pairs"]]
    for _, refs in pairs:
        for r in refs:
            assert len(tokens(r)) <= 6, r
    segments = []
    for p in pairs:
        seg = evaluate([p])
        seg["sentence_bleu"] = sentence_bleu(*p)
        segments.append(seg)
    result = {"corpus": evaluate(pairs), "segments": segments}
    if args.check is None:
        json.dump(result, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0
    with open(args.check, encoding="utf-8") as f:
        frozen = json.load(f)
    flat = [frozen["corpus"]] + frozen["segments"]
    fresh = [result["corpus"]] + result["segments"]
    bad = [(i, k) for i, (a, b) in enumerate(zip(flat, fresh)) for k in a if abs(a[k] - b[k]) > 1e-12]
    if bad or len(flat) != len(fresh):
        print("oracle drift:", bad)
        return 1
    print("oracle values unchanged")
    return 0


if __name__ == "__main__":
    sys.exit(main())
