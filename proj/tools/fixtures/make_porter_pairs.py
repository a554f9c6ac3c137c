"""Regenerates tests/fixtures/porter_pairs.tsv.

Expected stems come from NLTK's PorterStemmer in MARTIN_EXTENSIONS mode,
which NLTK validates against Martin Porter's published voc.txt/output.txt.
"""
import random

from nltk.stem.porter import PorterStemmer
from wordfreq import top_n_list

CLASSIC = """caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing filing happy sky
relational conditional rational valenci hesitanci digitizer conformabli radicalli
differentli vileli analogousli vietnamization predication operator feudalism
decisiveness hopefulness callousness formaliti sensitiviti sensibiliti triplicate
formative formalize electriciti electrical hopeful goodness revival allowance inference
airliner gyroscopic adjustable defensible irritant replacement adjustment dependent
adoption homologou communism activate angulariti homologous effective bowdlerize
probate rate cease controll roll generalizations oscillators stemming stemmer stemmed""".split()


def main():
    stem = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS).stem
    rng = random.Random(1980)
    vocab = [w for w in top_n_list("en", 30000) if w.isalpha() and w.isascii() and len(w) > 2]
    sampled = rng.sample(vocab, 120)
    words = list(dict.fromkeys(CLASSIC + sampled + ["a", "is", "as"]))
    with open("tests/fixtures/porter_pairs.tsv", "w") as out:
        for w in words:
            out.write(f"{w}\t{stem(w, to_lowercase=False)}\n")


if __name__ == "__main__":
    main()
