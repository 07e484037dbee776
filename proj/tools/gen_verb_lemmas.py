#!/usr/bin/env python3
# Copyright 2026 The Agentopic Authors
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

"""Regenerates data/lexicons/verb_lemmas.tsv.

Entries are dropped when they would break pipeline idempotence: a key that is
a stopword, a lemma that is a stopword, or a lemma that is itself a key.
"""

import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
LEX = ROOT / "data" / "lexicons"

REGULAR = """
accept achieve add admit advise affect agree aim allow announce appear apply
appoint approve argue arrange arrest arrive ask assess attack attempt attend
attract avoid award back ban base believe belong benefit block boost borrow
call campaign cancel celebrate challenge change charge chase claim clear close
collapse combine comment compare compete complain complete concern confirm
consider contain continue contribute control convict count cover crash create
criticise criticize damage debate decide declare decline defend delay deliver
demand deny depend describe design destroy develop die disappear discover
discuss dismiss download drop earn embrace employ end enjoy ensure enter
establish estimate expand expect experience explain explore express extend
face fail fear feature file fill finance finish fire fix focus follow force
form fund gain generate handle happen hate head help hire hope host identify
ignore impose improve include increase indicate inform insist install intend
introduce invest investigate invite involve jump join judge kick kill label
last launch learn like limit link list listen live look love manage mark
match measure mention merge miss move name need note notice obtain occur
offer open operate oppose order own perform pick place plan play point
predict prefer prepare present press prevent price produce promise promote
propose protect prove provide publish pull push qualify question raise reach
receive recognise record recover reduce refer reflect refuse reject relate
release rely remain remember remove repeat replace reply report represent
require rescue resign resolve respond restate result retain retire return
reveal review risk rule sack save score secure seem select serve settle share
shift sign slip slow solve sound start state stay step stop struggle study
succeed suffer suggest supply support suppose surprise survive suspend talk
target test thank threaten track trade train transfer travel treat try turn
urge use value vote wait walk want warn watch welcome wish work worry
"""

DOUBLE_FINAL = set("""
admit ban commit control drop occur plan prefer refer slip step stop
transfer travel
""".split())

# base: (past, participle, present participle or None)
IRREGULAR = {
    "begin": ("began", "begun", "beginning"),
    "bet": ("bet", "bet", "betting"),
    "bid": ("bid", "bid", "bidding"),
    "beat": ("beat", "beaten", None),
    "become": ("became", "become", "becoming"),
    "break": ("broke", "broken", None),
    "bring": ("brought", "brought", None),
    "build": ("built", "built", None),
    "buy": ("bought", "bought", None),
    "catch": ("caught", "caught", None),
    "choose": ("chose", "chosen", "choosing"),
    "come": ("came", "come", "coming"),
    "cost": ("cost", "cost", None),
    "cut": ("cut", "cut", "cutting"),
    "deal": ("dealt", "dealt", None),
    "draw": ("drew", "drawn", None),
    "drink": ("drank", "drunk", None),
    "drive": ("drove", "driven", "driving"),
    "eat": ("ate", "eaten", None),
    "fall": ("fell", "fallen", None),
    "feel": ("felt", "felt", None),
    "fight": ("fought", "fought", None),
    "find": ("found", "found", None),
    "fly": ("flew", "flown", None),
    "forget": ("forgot", "forgotten", "forgetting"),
    "get": ("got", "gotten", "getting"),
    "give": ("gave", "given", "giving"),
    "go": ("went", "gone", None),
    "grow": ("grew", "grown", None),
    "hit": ("hit", "hit", "hitting"),
    "hold": ("held", "held", None),
    "hurt": ("hurt", "hurt", None),
    "keep": ("kept", "kept", None),
    "know": ("knew", "known", None),
    "lead": ("led", "led", None),
    "leave": ("left", "left", "leaving"),
    "lend": ("lent", "lent", None),
    "let": ("let", "let", "letting"),
    "lose": ("lost", "lost", "losing"),
    "make": ("made", "made", "making"),
    "mean": ("meant", "meant", None),
    "meet": ("met", "met", None),
    "overcome": ("overcame", "overcome", "overcoming"),
    "pay": ("paid", "paid", None),
    "put": ("put", "put", "putting"),
    "quit": ("quit", "quit", "quitting"),
    "ride": ("rode", "ridden", "riding"),
    "ring": ("rang", "rung", None),
    "rise": ("rose", "risen", "rising"),
    "run": ("ran", "run", "running"),
    "say": ("said", "said", None),
    "see": ("saw", "seen", "seeing"),
    "seek": ("sought", "sought", None),
    "sell": ("sold", "sold", None),
    "send": ("sent", "sent", None),
    "set": ("set", "set", "setting"),
    "shake": ("shook", "shaken", "shaking"),
    "shoot": ("shot", "shot", None),
    "show": ("showed", "shown", None),
    "shut": ("shut", "shut", "shutting"),
    "sing": ("sang", "sung", None),
    "sit": ("sat", "sat", "sitting"),
    "sleep": ("slept", "slept", None),
    "speak": ("spoke", "spoken", None),
    "spend": ("spent", "spent", None),
    "split": ("split", "split", "splitting"),
    "spread": ("spread", "spread", None),
    "stand": ("stood", "stood", None),
    "steal": ("stole", "stolen", None),
    "strike": ("struck", "struck", "striking"),
    "swim": ("swam", "swum", "swimming"),
    "take": ("took", "taken", "taking"),
    "teach": ("taught", "taught", None),
    "tell": ("told", "told", None),
    "think": ("thought", "thought", None),
    "throw": ("threw", "thrown", None),
    "understand": ("understood", "understood", None),
    "undertake": ("undertook", "undertaken", "undertaking"),
    "wake": ("woke", "woken", "waking"),
    "wear": ("wore", "worn", None),
    "win": ("won", "won", "winning"),
    "withdraw": ("withdrew", "withdrawn", None),
    "write": ("wrote", "written", "writing"),
}

VOWELS = set("aeiou")


def third_person(v):
    if v.endswith(("s", "x", "z", "ch", "sh", "o")):
        return v + "es"
    if v.endswith("y") and v[-2] not in VOWELS:
        return v[:-1] + "ies"
    return v + "s"


def past(v):
    if v.endswith("e"):
        return v + "d"
    if v.endswith("y") and v[-2] not in VOWELS:
        return v[:-1] + "ied"
    if v in DOUBLE_FINAL:
        return v + v[-1] + "ed"
    return v + "ed"


def gerund(v):
    if v.endswith("ie"):
        return v[:-2] + "ying"
    if v.endswith("e") and not v.endswith(("ee", "ye", "oe")):
        return v[:-1] + "ing"
    if v in DOUBLE_FINAL:
        return v + v[-1] + "ing"
    return v + "ing"


def main():
    stop = set(
        w.strip() for w in (LEX / "stopwords.txt").read_text().splitlines() if w.strip()
    )
    entries = {}

    def add(form, lemma):
        if form != lemma:
            entries.setdefault(form, lemma)

    for v in REGULAR.split():
        add(third_person(v), v)
        add(past(v), v)
        add(gerund(v), v)
    for v, (p, pp, ing) in IRREGULAR.items():
        add(third_person(v), v)
        add(p, v)
        add(pp, v)
        add(ing or gerund(v), v)

    lemmas = set(entries.values())
    kept = {
        k: v
        for k, v in entries.items()
        if k not in stop and v not in stop and k not in lemmas
    }
    dropped = sorted(set(entries) - set(kept))
    out = LEX / "verb_lemmas.tsv"
    with out.open("w") as f:
        for k in sorted(kept):
            f.write(f"{k}\t{kept[k]}\n")
    print(f"wrote {len(kept)} entries to {out}; dropped {dropped}", file=sys.stderr)


if __name__ == "__main__":
    main()
