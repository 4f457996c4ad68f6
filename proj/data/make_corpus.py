#!/usr/bin/env python3
"""Regenerates data/corpus/mini.jsonl and data/fixtures/corpus.json.

Ten complete items (original pair + 1/2/3-step chains on both sides, AMR for
every sentence). The decode outcomes are designed, not sampled:

  c01  plain entailment via a paraphrase with the same AMR
  c02  unhelpful side contradicts through :polarity alone
  c03  negated claim; helpful side needs a fixture NLI contradiction at
       con=85, so the helpful prediction flips across the tau_c grid
  c04  two-atom claim, both atoms must match
  c05  helpful side bridges over a fixture cosine of ~0.65, so the helpful
       prediction flips across the tau_m grid
  c06  unhelpful chain that accidentally helps (false positive by design)
  c07  helpful chain that never connects (false negative by design)
  c08  helpful chain makes the premise bundle inconsistent
  c09  fixture similarity ~0.9 plus fixture contradiction con=95 on the same
       atom pair: conflict (errored) until tau_c=100 drops the edge
  c10  :mod edge kept as a mod(entity,modifier) atom

Everything else embeds through the deterministic hash fallback, so identical
sentences match at cosine 1.0 and unrelated ones stay low.
"""

import json
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))

# sentence -> penman. Single table so spelling stays consistent.
AMR = {}


def intrans(sentence, verb, subj, neg=False):
    pol = " :polarity -" if neg else ""
    AMR[sentence] = f"(v / {verb}-01{pol} :arg0 (s / {subj}))"
    return sentence


def trans(sentence, verb, subj, obj):
    AMR[sentence] = f"(v / {verb}-01 :arg0 (s / {subj}) :arg1 (o / {obj}))"
    return sentence


def patient(sentence, verb, obj):
    AMR[sentence] = f"(v / {verb}-01 :arg1 (o / {obj}))"
    return sentence


# Fillers: inert one-atom sentences used to pad chains.
F1 = intrans("The wind blows.", "blow", "wind")
F2 = intrans("The clock ticks.", "tick", "clock")
F3 = intrans("The stars shine.", "shine", "star")
F4 = intrans("The leaves rustle.", "rustle", "leaf")
F5 = intrans("The moon rises.", "rise", "moon")


def chains(link):
    """1/2/3-step chains ending in the sentence that carries the content."""
    return {"1": [link], "2": [F1, link], "3": [F2, F3, link]}


def filler_chains():
    return {"1": [F4], "2": [F4, F5], "3": [F4, F5, F1]}


items = []


def item(id_, premise, claim, helpful, unhelpful, orig_h, orig_u):
    sentences = {premise, claim, orig_h, orig_u}
    for side in (helpful, unhelpful):
        for chain in side.values():
            sentences.update(chain)
    items.append(
        {
            "id": id_,
            "schema": 1,
            "premise": premise,
            "claim": claim,
            "helpful": helpful,
            "unhelpful": unhelpful,
            "helpful_original": orig_h,
            "unhelpful_original": orig_u,
            "amr": {s: AMR[s] for s in sorted(sentences)},
        }
    )


# c01: paraphrase with the same graph decodes as entailment.
p = trans("The farmer waters the garden.", "water", "farmer", "garden")
c = patient("The plants grow.", "grow", "plant")
para = "Plants are growing."
AMR[para] = AMR[c]
item("c01", p, c, chains(c), filler_chains(), para, F5)

# c02: "does not bark" flips the shared atom's sign.
p = trans("The dog guards the house.", "guard", "dog", "house")
c = intrans("The dog barks.", "bark", "dog")
nb = intrans("The dog does not bark.", "bark", "dog", neg=True)
item("c02", p, c, chains(c), chains(nb), c, nb)

# c03: negated claim; hiding contradicts fleeing only while tau_c <= 85.
p = intrans("The cat prowls.", "prowl", "cat")
c = intrans("The mouse does not flee.", "flee", "mouse", neg=True)
hide = intrans("The mouse hides.", "hide", "mouse")
flee = intrans("The mouse flees.", "flee", "mouse")
item("c03", p, c, chains(hide), chains(flee), hide, flee)

# c04: both claim atoms have to find matches.
p = trans("The chef cooks the meal.", "cook", "chef", "meal")
c = trans("The guests eat the meal.", "eat", "guest", "meal")
item("c04", p, c, chains(c), filler_chains(), c, F4)

# c05: nap-vs-sleep fixture cosine ~0.65 sits inside the tau_m grid.
p = intrans("The cat rests.", "rest", "cat")
c = intrans("The cat sleeps.", "sleep", "cat")
nap = intrans("The cat naps.", "nap", "cat")
nosleep = intrans("The cat does not sleep.", "sleep", "cat", neg=True)
item("c05", p, c, chains(nap), chains(nosleep), nap, nosleep)

# c06: the "unhelpful" side repeats the claim — a designed false positive.
p = intrans("The bird sings.", "sing", "bird")
c = intrans("The sun rises.", "rise", "sun")
item("c06", p, c, chains(c), chains(c), c, c)

# c07: helpful side never connects — a designed false negative.
p = intrans("The rain falls.", "fall", "rain")
c = intrans("The river floods.", "flood", "river")
water = intrans("The water rises.", "rise", "water")
item("c07", p, c, chains(water), filler_chains(), water, F2)

# c08: helpful chain denies the premise, so the bundle is inconsistent.
p = intrans("The wolf howls.", "howl", "wolf")
c = intrans("The moon glows.", "glow", "moon")
nohowl = intrans("The wolf does not howl.", "howl", "wolf", neg=True)
item("c08", p, c, chains(nohowl), filler_chains(), nohowl, F3)

# c09: work~play is both similar (0.9) and contradictory (95): a conflict
# that errors until tau_c=100 removes the contradiction edge.
p = trans("The teacher supervises the class.", "supervise", "teacher", "class")
c = intrans("The child works.", "work", "child")
play = intrans("The child plays.", "play", "child")
item("c09", p, c, chains(c), chains(play), c, play)

# c10: :mod stays a mod(car,red) atom at default settings.
AMR["The red car speeds."] = "(v / speed-01 :arg0 (c / car :mod (r / red)))"
p = intrans("The engine roars.", "roar", "engine")
c = "The red car speeds."
item("c10", p, c, chains(c), filler_chains(), c, F1)


def inst_arg0(verb, subj):
    return f"{subj} is the agent performing action {verb}."


# Fixture vectors live in the hash fallback's 32-dim space so every pairwise
# cosine is well-defined.
def vec32(*pairs):
    v = [0.0] * 32
    for idx, val in pairs:
        v[idx] = val
    return v


fixtures = {
    "embeddings": {
        inst_arg0("sleep", "cat"): vec32((0, 1.0)),
        inst_arg0("nap", "cat"): vec32((0, 0.65), (1, math.sqrt(1 - 0.65 * 0.65))),
        inst_arg0("work", "child"): vec32((2, 1.0)),
        inst_arg0("play", "child"): vec32((2, 0.9), (3, math.sqrt(1 - 0.9 * 0.9))),
    },
    "nli": [],
}

for a, b, con in [
    (inst_arg0("flee", "mouse"), inst_arg0("hide", "mouse"), 85),
    (inst_arg0("work", "child"), inst_arg0("play", "child"), 95),
]:
    for pre, hyp in [(a, b), (b, a)]:
        fixtures["nli"].append(
            {"premise": pre, "hypothesis": hyp, "ent": 2.0, "con": float(con), "neu": 3.0}
        )

os.makedirs(os.path.join(HERE, "corpus"), exist_ok=True)
with open(os.path.join(HERE, "corpus", "mini.jsonl"), "w") as f:
    for it in items:
        f.write(json.dumps(it, sort_keys=True) + "\n")
with open(os.path.join(HERE, "fixtures", "corpus.json"), "w") as f:
    json.dump(fixtures, f, indent=2, sort_keys=True)
    f.write("\n")
print(f"wrote {len(items)} items, {len(AMR)} graphs")
