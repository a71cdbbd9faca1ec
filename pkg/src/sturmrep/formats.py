"""On-disk formats: word files, profile tables, estimates and records."""
from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Mapping, Sequence

from .complexity import PProfile, RProfile

PROFILE_HEADER = ["n", "r", "i", "p"]
RECORD_HEADER = ["n", "m", "r_off", "s", "p", "e_num", "e_den"]


class FormatError(ValueError):
    pass


# ---------------------------------------------------------------------------
# word files: "# key: value" header lines, then the symbols


def dump_word(word: str, meta: Mapping[str, object]) -> str:
    lines = [f"# {k}: {meta[k]}" for k in sorted(meta)]
    lines.append(word)
    return "\n".join(lines) + "\n"


def load_word(text: str) -> tuple[str, dict[str, str]]:
    meta: dict[str, str] = {}
    body = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if not sep:
                raise FormatError(f"line {lineno}: header lines look like '# key: value'")
            meta[key.strip()] = value.strip()
        elif line.strip():
            body.append(line.strip())
    word = "".join(body)
    if not word.isdigit() and word:
        raise FormatError("word data must consist of digits 0-9")
    if "length" in meta:
        try:
            declared = int(meta["length"])
        except ValueError:
            raise FormatError(f"bad length header {meta['length']!r}") from None
        if declared != len(word):
            raise FormatError(f"header says {declared} symbols, file has {len(word)}")
    if "base" in meta:
        try:
            base = int(meta["base"])
        except ValueError:
            raise FormatError(f"bad base header {meta['base']!r}") from None
        if word and int(max(word)) >= base:
            raise FormatError(f"digit {max(word)} not allowed in base {base}")
    return word, meta


def read_word_file(path: str) -> tuple[str, dict[str, str]]:
    with open(path, encoding="ascii") as fh:
        return load_word(fh.read())


def write_word_file(path: str, word: str, meta: Mapping[str, object]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dump_word(word, meta))


# ---------------------------------------------------------------------------
# profiles


def profile_rows(rp: RProfile, pp: PProfile | None, max_n: int) -> list[list]:
    """Rows n = 1..max_n; r and i are empty beyond the observed range."""
    rows = []
    for n in range(1, max_n + 1):
        r = rp.get(n)
        i = rp.start(n)
        p = pp.get(n) if pp is not None and n <= pp.N else None
        rows.append([n, "" if r is None else r, "" if i is None else i, "" if p is None else p])
    return rows


def profile_csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PROFILE_HEADER)
    w.writerows(rows)
    return buf.getvalue()


def profile_json(rp: RProfile, rows: Sequence[Sequence]) -> str:
    def col(j):
        return [None if row[j] == "" else row[j] for row in rows]

    obj = {"word": rp.word_id, "horizon": rp.N, "n": col(0), "r": col(1), "i": col(2), "p": col(3)}
    return json.dumps(obj, sort_keys=True) + "\n"


def parse_profile_csv(text: str) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != PROFILE_HEADER:
        raise FormatError(f"expected header {','.join(PROFILE_HEADER)}")
    return [{k: (int(v) if v != "" else None) for k, v in row.items()} for row in reader]


def plot_data(rp: RProfile) -> str:
    """Two columns: n and r(n)/n."""
    return "".join(f"{n} {rp.r[n] / n:.12g}\n" for n in range(1, rp.n_max + 1))


# ---------------------------------------------------------------------------
# approximation records


def records_csv(records: Iterable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECORD_HEADER)
    for rec in records:
        w.writerow(rec.csv_row())
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
