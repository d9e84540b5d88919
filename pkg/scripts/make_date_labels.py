"""Generate the labeled date-candidate set used to train the date filter.

Synthetic contract sentences are assembled with a seeded RNG. True dates are
planted at known offsets; every other candidate the raw grammar finds (section
numbers, fractions, version strings, lot numbers) is labeled negative. The
golden example texts are appended as extra documents.
"""

import argparse
import random
from pathlib import Path

from lexscan.dates import get_raw_dates, write_labeled_csv

MONTH_NAMES = ["January", "February", "March", "April", "May", "June", "July", "August",
               "September", "October", "November", "December"]
MONTH_ABBR = ["Jan.", "Feb.", "Mar.", "Apr.", "May", "Jun.", "Jul.", "Aug.", "Sept.", "Oct.", "Nov.", "Dec."]


def render_date(rng: random.Random) -> str:
    m, d, y = rng.randint(1, 12), rng.randint(1, 28), rng.randint(1975, 2030)
    forms = [
        f"{MONTH_NAMES[m - 1]} {d}, {y}",
        f"{MONTH_ABBR[m - 1]} {d}, {y}",
        f"{d} {MONTH_NAMES[m - 1]} {y}",
        f"{y}-{m:02d}-{d:02d}",
        f"{m:02d}/{d:02d}/{y}",
        f"{m}/{d}/{y % 100:02d}",
        f"{MONTH_NAMES[m - 1]} {y}",
        f"the {d}th day of {MONTH_NAMES[m - 1]}, {y}",
        f"{MONTH_NAMES[m - 1].upper()} {d}, {y}",
        f"{MONTH_NAMES[m - 1]} {d}",
    ]
    return rng.choice(forms)


POSITIVE = [
    "This Agreement is dated as of {D}.",
    "The Closing shall occur on or before {D}, subject to the terms hereof.",
    "Tenant shall vacate the Premises no later than {D}.",
    "The Effective Date is {D} (the “Effective Date”).",
    "Notice was delivered to Seller on {D} by overnight courier.",
    "The Term expires on {D} unless extended.",
]


def negative(rng: random.Random) -> str:
    a, b, c = rng.randint(1, 12), rng.randint(1, 28), rng.randint(0, 99)
    return rng.choice([
        f"as provided in Section {a}.{b} of this Agreement.",
        f"pursuant to Sections {a}.{b} and {rng.randint(1, 12)}.{rng.randint(1, 28)} hereof.",
        f"Buyer shall own an undivided {a}/{b} interest in the Property.",
        f"running software version {a}.{b}.{c:02d} or later.",
        f"the ratio shall not exceed {a}/{b} at any time.",
        f"attached hereto as Exhibit {a}.{b}.",
        f"consisting of approximately {a}.{b} acres of land.",
        f"being Lot {a}-{b}-{c:02d} of the recorded plat.",
        f"as set forth on Schedule {a}.{b}.{c:02d}.",
        f"see page {a}/{b} of the Survey.",
    ])


def make_document(rng: random.Random) -> tuple[str, set[tuple[int, int]]]:
    text, planted = "", set()
    for _ in range(rng.randint(2, 4)):
        if rng.random() < 0.5:
            template = rng.choice(POSITIVE)
            date_text = render_date(rng)
            head, tail = template.split("{D}")
            start = len(text) + len(head)
            planted.add((start, start + len(date_text)))
            text += head + date_text + tail + " "
        else:
            sentence = negative(rng)
            text += sentence[0].upper() + sentence[1:] + " "
    return text.strip(), planted


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("src/lexscan/data/date_filter_labels.csv"))
    ap.add_argument("--docs", type=int, default=160)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--golden", type=Path, default=Path("tests/golden"))
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    labeled = []
    for _ in range(args.docs):
        text, planted = make_document(rng)
        for c in get_raw_dates(text, allow_partial=True):
            labeled.append((c, (c.span.start, c.span.end) in planted))
    for path in sorted(args.golden.glob("*.txt")):
        text = path.read_text(encoding="utf-8")
        # the only true date in the golden texts is Example 1's effective date
        for c in get_raw_dates(text, allow_partial=True):
            labeled.append((c, c.text == "October 12, 2012"))

    args.out.parent.mkdir(parents=True, exist_ok=True)
    provenance = (f"# generated by scripts/make_date_labels.py --docs {args.docs} --seed {args.seed}\n"
                  "# synthetic contract sentences with planted dates plus the golden example texts\n")
    body = provenance + write_labeled_csv(labeled)
    args.out.write_text(body, encoding="utf-8")
    pos = sum(label for _, label in labeled)
    print(f"wrote {len(labeled)} candidates ({pos} positive, {len(labeled) - pos} negative) to {args.out}")


if __name__ == "__main__":
    main()
