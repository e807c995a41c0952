#!/usr/bin/env python3
"""Builds the bundled spell resources (wordlist.txt, gazetteer.txt).

Sources:
  * wordfreq's Turkish frequency list (small_tr.msgpack.gz, CC BY-SA 4.0),
    which provides the frequency-ranked head of the wordlist;
  * the zemberek/zeyrek lexicon (master-dictionary.dict, non-tdk.dict,
    proper.dict, person-names.dict), which provides lemmas plus the
    attributes needed to inflect nouns;
  * the repository's own lexicons and reference sentences.

Usage:
  build_spell_data.py --wordfreq small_tr.msgpack.gz --zeyrek zeyrek/resources/tr \
      --data data/
"""

import argparse
import gzip
import pathlib
import re
import unicodedata

import msgpack

BACK = set("aıou")
FRONT = set("eiöü")
VOWELS = BACK | FRONT | set("âîû")
HARD = set("fstkçşhp")
TURKISH_WORD = re.compile(r"^[a-zçğıöşüâîû]+$")


def lower_tr(s):
    return s.replace("I", "ı").replace("İ", "i").lower()


def last_vowel(w):
    for ch in reversed(w):
        if ch in VOWELS:
            return {"â": "a", "î": "i", "û": "u"}.get(ch, ch)
    return None


def four_way(v, inverse):
    if inverse:
        return "i" if v in "aıei" else "ü"
    return {"a": "ı", "ı": "ı", "o": "u", "u": "u",
            "e": "i", "i": "i", "ö": "ü", "ü": "ü"}[v]


def two_way(v, inverse):
    if inverse:
        return "e"
    return "a" if v in BACK else "e"


def syllables(w):
    return sum(1 for ch in w if ch in VOWELS)


def voiced(w):
    last = w[-1]
    if last == "k":
        return w[:-1] + ("g" if len(w) > 1 and w[-2] == "n" else "ğ")
    return w[:-1] + {"p": "b", "ç": "c", "t": "d"}[last]


def drop_last_vowel(w):
    for i in range(len(w) - 1, -1, -1):
        if w[i] in VOWELS:
            return w[:i] + w[i + 1:]
    return w


def inflect_noun(word, attrs):
    v = last_vowel(word)
    if v is None:
        return []
    inverse = "InverseHarmony" in attrs
    h = four_way(v, inverse)
    a = two_way(v, inverse)
    ends_vowel = word[-1] in VOWELS

    pre_vowel = word
    if "LastVowelDrop" in attrs:
        pre_vowel = drop_last_vowel(word)
    if "Doubling" in attrs:
        pre_vowel = pre_vowel + pre_vowel[-1]
    if word[-1] in "pçtk" and "NoVoicing" not in attrs:
        if "Voicing" in attrs or syllables(word) > 1:
            pre_vowel = voiced(pre_vowel)

    d = "t" if word[-1] in HARD else "d"
    forms = [
        word + "l" + a + "r",
        word + "l" + a + "r" + ("ı" if a == "a" else "i"),
        word + "l" + a + "r" + "d" + a,
        word + d + a,
        word + d + a + "n",
    ]
    if ends_vowel:
        forms += [word + "y" + h, word + "y" + a, word + "n" + h + "n",
                  word + "s" + h, word + "s" + h + "n" + "d" + a,
                  word + "y" + "l" + a]
    else:
        forms += [pre_vowel + h, pre_vowel + a, pre_vowel + h + "n",
                  pre_vowel + h + "n" + "d" + a, word + "l" + a]
    return forms


def parse_dict(path):
    entries = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        m = re.match(r"^(\S+)\s*(?:\[(.*)\])?", line)
        if not m:
            continue
        word = m.group(1)
        meta = m.group(2) or ""
        pos = ""
        attrs = set()
        for part in meta.split(";"):
            part = part.strip()
            if part.startswith("P:"):
                pos = part[2:].strip()
            elif part.startswith("A:"):
                attrs |= {a.strip() for a in part[2:].split(",")}
        entries.append((word, pos, attrs))
    return entries


def read_lines(path):
    out = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip() and not line.startswith("#"):
            out.append(line.rstrip("\n"))
    return out


def surface_words(sentence):
    return [w for w in re.findall(r"[^\W\d_]+(?:['’][^\W\d_]+)?", sentence)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--wordfreq", required=True)
    ap.add_argument("--zeyrek", required=True)
    ap.add_argument("--data", required=True)
    args = ap.parse_args()

    data = pathlib.Path(args.data)
    zeyrek = pathlib.Path(args.zeyrek)
    here = pathlib.Path(__file__).parent
    places = read_lines(here / "places.txt")
    names = read_lines(here / "given_names.txt")

    # Common lowercase forms: lemmas + generated inflections.
    common = []
    for name in ("master-dictionary.dict", "non-tdk.dict"):
        for word, pos, attrs in parse_dict(zeyrek / name):
            w = lower_tr(unicodedata.normalize("NFC", word))
            if not TURKISH_WORD.match(w) or pos.startswith("Punc"):
                continue
            common.append(w)
            if pos in ("", "Noun", "Adj") and not (w.endswith("mak") or w.endswith("mek")):
                if attrs & {"CompoundP3sg", "ImplicitPlural", "NoSuffix"}:
                    continue
                common.extend(inflect_noun(w, attrs))
    common_set = set(common)

    # Gazetteer: proper nouns whose lowercase form is not also a common word.
    proper = []
    for name in ("proper.dict", "person-names.dict"):
        for word, _, _ in parse_dict(zeyrek / name):
            proper.append(unicodedata.normalize("NFC", word))
    proper.extend(places)
    proper.extend(names)
    gazetteer = []
    seen = set()
    for p in proper:
        if not p[:1].isupper() or not TURKISH_WORD.match(lower_tr(p)):
            continue
        lp = lower_tr(p)
        if lp in common_set or lp in seen or len(lp) < 2:
            continue
        seen.add(lp)
        gazetteer.append(p)
    gazetteer_lower = seen

    # Frequency-ranked head from wordfreq.
    raw = msgpack.unpackb(gzip.open(args.wordfreq).read(), raw=False)
    ranked = [w for bucket in raw[1:] for w in bucket]

    typos = set(read_lines(data / "lexicons" / "holdout_typos.txt"))

    words = []
    have = set()

    def add(w):
        w = lower_tr(unicodedata.normalize("NFC", w))
        if (TURKISH_WORD.match(w) and w not in have and w not in typos
                and w not in gazetteer_lower):
            have.add(w)
            words.append(w)

    for w in ranked:
        add(w)
    for w in common:
        add(w)

    # Every canonical form the grammar lexicons can produce.
    lex = data / "lexicons"
    for line in read_lines(lex / "foreign_r1.tsv"):
        add(line.split("\t")[1])
    for line in read_lines(lex / "haplology_stems.tsv"):
        cols = line.split("\t")
        add(cols[0])
        add(cols[2])
    for line in read_lines(lex / "adv_vowel_restore.tsv"):
        add(line.split("\t")[1])
    for line in read_lines(lex / "pronoun_exc.tsv"):
        add(line.split("\t")[1])
    for name in ("redup_words.tsv", "light_verb_sep.tsv", "comp_verb_converbs.tsv",
                 "conj_de_hosts.tsv", "conj_ki_hosts.tsv"):
        for line in read_lines(lex / name):
            add(line.split("\t")[0])

    # Every surface form of the corrected reference and scenario sentences.
    for name in ("reference_sentences.tsv", "scenario.tsv"):
        for line in read_lines(data / name):
            cols = line.split("\t")
            outputs = [cols[0] if c == "UNCHANGED" else c for c in cols[1:3]]
            for col in outputs:
                for w in surface_words(col):
                    add(re.split(r"['’]", w)[0])

    # Place names for the apostrophe guard of the -de/-da rule.
    (lex / "conj_de_locative_hosts.tsv").write_text(
        "# Place-name hosts: an apostrophe + de/da after these is the locative case, "
        "not the conjunction.\n"
        + "\n".join(lower_tr(p) for p in places) + "\n", encoding="utf-8")

    (data / "lexicons" / "wordlist.txt").write_text("\n".join(words) + "\n", encoding="utf-8")
    (data / "lexicons" / "gazetteer.txt").write_text("\n".join(gazetteer) + "\n", encoding="utf-8")
    print(f"wordlist: {len(words)} forms, gazetteer: {len(gazetteer)} names")


if __name__ == "__main__":
    main()
