"""Regenerates tests/fixtures/annotation_study_counts.tsv.

Three annotators per tweet; row patterns are chosen so that majority voting
yields the published per-class totals.
"""
import itertools

TARGETS = [
    ("positive", 2543, [("pos", "pos", "neg"), ("pos", "pos", "pos"), ("neu", "pos", "pos"), ("pos", "amb", "pos")]),
    ("negative", 1877, [("neg", "neg", "neg"), ("neg", "pos", "neg"), ("amb", "neg", "neg")]),
    ("neutral", 4543, [("neu", "neu", "neu"), ("neu", "neu", "pos"), ("neg", "neu", "neu"), ("neu", "", "neu")]),
    ("ambiguous", 451, [("amb", "amb", "pos"), ("amb", "amb", "amb")]),
    ("no_majority", 390, [("pos", "neg", "neu"), ("amb", "pos", "neg"), ("", "neu", "amb")]),
    ("non_english", 369, [("", "", ""), ("blank", "blank", "pos"), ("", "BLANK", "neu")]),
]


def main():
    rows = []
    for _, count, patterns in TARGETS:
        cycle = itertools.cycle(patterns)
        rows.extend(next(cycle) for _ in range(count))
    with open("tests/fixtures/annotation_study_counts.tsv", "w") as out:
        out.write("tweet_id\tlabel_1\tlabel_2\tlabel_3\n")
        for i, labels in enumerate(rows, start=1):
            out.write(f"{i}\t" + "\t".join(labels) + "\n")


if __name__ == "__main__":
    main()
