"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 bad input, 3 budget exceeded.
All output is deterministic for identical arguments.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import arith, complexity, diophantine, exponents, formats, words

EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 1, 2, 3

WORD_KINDS = (
    "fibonacci", "thue-morse", "sturmian", "characteristic", "concatenation",
    "extremal", "periodic", "de-bruijn",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# word sources


def _add_word_options(p: argparse.ArgumentParser, need_length: bool) -> None:
    g = p.add_argument_group("word generator")
    g.add_argument("--word", choices=WORD_KINDS, help="generator name")
    g.add_argument("--length", "-N", type=int, required=need_length, help="number of symbols")
    g.add_argument("--slope", help="quadratic slope, e.g. '(-2+sqrt(10))/3'")
    g.add_argument("--intercept", default="0", help="intercept (rational or same quadratic field)")
    g.add_argument("--variant", choices=("floor", "ceiling"), default="floor")
    g.add_argument("--cf", help="continued fraction such as '[0;2,1,1,(2,1,1)]'")
    g.add_argument("--pre", default="", help="preperiod of a periodic word")
    g.add_argument("--period", help="period of a periodic word")
    g.add_argument("--alphabet-size", "-b", type=int, default=2, help="de Bruijn alphabet size")
    g.add_argument("--order", type=int, help="de Bruijn order")
    g.add_argument("--morphism", help="apply a morphism such as '0:001,1:01' to the generated word")
    g.add_argument("--lead", default="", help="word W placed before the morphic image")
    g.add_argument("--cache-dir", help="directory for cached prefixes")


def _generator_spec(a) -> tuple[str, object]:
    """Canonical spec string and a callable returning a prefix of length N."""
    kind = a.word
    if kind == "fibonacci":
        spec, make = "fibonacci", words.fibonacci_word
    elif kind == "thue-morse":
        spec, make = "thue-morse", words.thue_morse_word
    elif kind == "extremal":
        spec, make = "extremal", lambda N: words.extremal_word().prefix(N)
    elif kind == "sturmian":
        if not a.slope:
            raise UsageError("--word sturmian needs --slope")
        theta = arith.parse_quadratic(a.slope)
        rho = arith.parse_quadratic(a.intercept)
        st = words.sturmian_word(theta, rho, a.variant)
        spec, make = st.spec_string(), st.prefix
    elif kind in ("characteristic", "concatenation"):
        if not a.cf:
            raise UsageError(f"--word {kind} needs --cf")
        cf = arith.CFExpansion.parse(a.cf)
        st = words.characteristic_word(cf) if kind == "characteristic" else words.concatenation_word(cf)
        spec, make = st.spec_string(), st.prefix
    elif kind == "periodic":
        if not a.period:
            raise UsageError("--word periodic needs --period")
        st = words.periodic_word(a.pre, a.period)
        spec, make = st.spec_string(), st.prefix
    elif kind == "de-bruijn":
        if a.order is None:
            raise UsageError("--word de-bruijn needs --order")
        w = words.de_bruijn_word(a.alphabet_size, a.order)
        spec = f"de-bruijn;b={a.alphabet_size};n={a.order}"
        cyc = w[: len(w) - a.order + 1]

        def make(N, cyc=cyc):
            return (cyc * (N // len(cyc) + 1))[:N]
    else:
        raise UsageError("give an input file or --word")

    if a.morphism:
        images = words.parse_morphism(a.morphism)
        base_make = make

        def make(N, base_make=base_make):
            need = N
            while True:
                src = base_make(need)
                y = words.apply_morphism(images, src, a.lead)
                out = "".join(y)
                if len(out) >= N:
                    return out[:N]
                need *= 2

        spec = f"{spec}|morphism={a.morphism};lead={a.lead}"
    return spec, make


def _cached_prefix(cache_dir: str | None, spec: str, N: int, make) -> str:
    if not cache_dir:
        return make(N)
    key = hashlib.sha256(spec.encode()).hexdigest()[:16]
    os.makedirs(cache_dir, exist_ok=True)
    best = None
    for name in os.listdir(cache_dir):
        if name.startswith(key + "_") and name.endswith(".word"):
            try:
                L = int(name[len(key) + 1 : -5])
            except ValueError:
                continue
            if L >= N and (best is None or L < best):
                best = L
    if best is not None:
        word, meta = formats.read_word_file(os.path.join(cache_dir, f"{key}_{best}.word"))
        if meta.get("generator") == spec:
            return word[:N]
    word = make(N)
    formats.write_word_file(os.path.join(cache_dir, f"{key}_{N}.word"), word,
                            {"generator": spec, "length": N})
    return word


def _load_word(a) -> tuple[str, dict]:
    """Word from the positional input file, or from generator options."""
    if getattr(a, "input", None):
        try:
            word, meta = formats.read_word_file(a.input)
        except OSError as exc:
            raise formats.FormatError(f"cannot read {a.input}: {exc.strerror}") from None
        if a.length is not None:
            if a.length > len(word):
                raise formats.FormatError(f"{a.input} holds only {len(word)} symbols")
            word = word[: a.length]
        meta.setdefault("generator", os.path.basename(a.input))
        return word, meta
    if a.length is None:
        raise UsageError("--length is required with --word")
    if a.length < 1:
        raise UsageError("--length must be >= 1")
    spec, make = _generator_spec(a)
    word = _cached_prefix(a.cache_dir, spec, a.length, make)
    return word, {"generator": spec}


def _emit(a, text: str) -> None:
    if getattr(a, "output", None):
        with open(a.output, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_generate(a) -> int:
    word, meta = _load_word(a)
    _emit(a, formats.dump_word(word, {"generator": meta["generator"], "length": len(word)}))
    return 0


def cmd_profile(a) -> int:
    word, meta = _load_word(a)
    la = complexity.l_array(word)
    rp = complexity.r_profile(word, meta["generator"], la)
    pp = complexity.p_profile(word, meta["generator"], la)
    max_n = a.max_n if a.max_n is not None else min(len(word), rp.n_max + 1)
    rows = formats.profile_rows(rp, pp, min(max_n, len(word)))
    text = formats.profile_csv(rows) if a.format == "csv" else formats.profile_json(rp, rows)
    _emit(a, text)
    if a.emit_plot_data:
        with open(a.emit_plot_data, "w", encoding="ascii") as fh:
            fh.write(formats.plot_data(rp))
    return 0


def cmd_classify(a) -> int:
    word, meta = _load_word(a)
    prof = complexity.r_profile(word, meta["generator"])
    v = complexity.classify(word, profile=prof)
    out = {"word": meta["generator"], "horizon": len(word), "verdict": v.verdict,
           "witness": v.witness, "witness_valid": v.validate(prof)}
    _emit(a, formats.to_json(out))
    return 0


def _window(values, default):
    return tuple(values) if values else default


def cmd_exponents(a) -> int:
    word, meta = _load_word(a)
    la = complexity.l_array(word)
    prof = complexity.r_profile(word, meta["generator"], la)
    if prof.n_max < 1:
        raise formats.FormatError("no repeated factor in this prefix")
    rw = _window(a.window, (max(1, prof.n_max // 10), prof.n_max))
    rw = (rw[0], min(rw[1], prof.n_max))
    pw = _window(a.prefix_window, (1, len(word)))
    rep = exponents.rep_estimate(prof, rw)
    dio = exponents.dio_estimate(word, pw, larray=la)
    ice = exponents.ice_estimate(word, pw)
    out = {"word": meta["generator"], "horizon": len(word),
           "estimates": [e.to_json() for e in (rep, dio, ice)],
           "rep_float": float(rep.value), "dio_float": float(dio.value), "ice_float": float(ice.value)}
    _emit(a, formats.to_json(out))
    if a.emit_plot_data:
        with open(a.emit_plot_data, "w", encoding="ascii") as fh:
            fh.write(formats.plot_data(prof))
    return 0


def cmd_approx(a) -> int:
    word, meta = _load_word(a)
    base = a.base if a.base is not None else int(meta.get("base", 2))
    x = diophantine.DigitExpansion(base, word, meta["generator"])
    prof = complexity.r_profile(word, meta["generator"])
    recs = diophantine.repetition_approximations(x, prof)
    shown = recs if a.all else [r for r in recs if 2 * r.m <= x.N]
    mu = diophantine.mu_lower_estimate(recs) if shown else None
    text = formats.records_csv(shown)
    summary = {"base": base, "digits": x.N, "records": len(shown)}
    if mu is not None:
        summary["mu_lower"] = mu.to_json()
    text += "# " + json.dumps(summary, sort_keys=True) + "\n"
    _emit(a, text)
    return 0


def cmd_adams(a) -> int:
    alpha = arith.parse_quadratic(a.alpha)
    rep = diophantine.adams_davison_check(alpha, a.base, a.digits)
    out = {"alpha": str(alpha), "base": a.base, "digits": a.digits,
           "digit_side": rep.digit_side.to_json(), "quotient_side": rep.quotient_side, "gap": rep.gap}
    _emit(a, formats.to_json(out))
    return 0


def cmd_logdemo(a) -> int:
    x = diophantine.log_digits(a.a, a.base, a.digits)
    pp = complexity.p_profile(x.digits, x.provenance)
    top = min(a.max_n, x.N)
    rows = [(n, pp.get(n), pp.get(n) - n) for n in range(1, top + 1)]
    if a.format == "json":
        text = formats.to_json({"source": x.provenance, "base": a.base, "digits": x.digits,
                                "n": [r[0] for r in rows], "p": [r[1] for r in rows],
                                "p_minus_n": [r[2] for r in rows]})
    else:
        text = "n,p,p_minus_n\n" + "".join(f"{n},{p},{d}\n" for n, p, d in rows)
    _emit(a, text)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sturmrep", description="Repetitions, complexity and exponents of infinite words.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("generate", help="write a prefix of a word to a file")
    _add_word_options(p, need_length=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    for name, func, helptext in (
        ("profile", cmd_profile, "r(n), i(n) and p(n) table"),
        ("classify", cmd_classify, "periodic / Sturmian / other verdict"),
        ("exponents", cmd_exponents, "rep, dio and ice estimates"),
        ("approx", cmd_approx, "rational approximations and mu lower bound"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input", nargs="?", help="word file (omit to use --word)")
        _add_word_options(p, need_length=False)
        p.add_argument("-o", "--output")
        p.set_defaults(func=func)
        if name == "profile":
            p.add_argument("--format", choices=("csv", "json"), default="csv")
            p.add_argument("--max-n", type=int, help="last n row (default: first absent n)")
        if name in ("profile", "exponents"):
            p.add_argument("--emit-plot-data", metavar="PATH", help="write 'n r(n)/n' pairs")
        if name == "exponents":
            p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"), help="n window for rep")
            p.add_argument("--prefix-window", nargs=2, type=int, metavar=("LO", "HI"),
                           help="prefix-length window for dio and ice")
        if name == "approx":
            p.add_argument("--base", type=int, help="digit base (default: header or 2)")
            p.add_argument("--all", action="store_true", help="include records with m > N/2")

    p = sub.add_parser("adams", help="both sides of the Adams-Davison formula")
    p.add_argument("--alpha", required=True, help="quadratic alpha > 1, e.g. '1+sqrt(2)'")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--digits", type=int, default=10_000)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_adams)

    p = sub.add_parser("logdemo", help="certified digits of log(1+1/a) and p(n)-n")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--digits", type=int, default=1000)
    p.add_argument("--max-n", type=int, default=30)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_logdemo)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return a.func(a)
    except UsageError as exc:
        print(f"sturmrep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (words.BudgetExceeded, arith.PeriodNotFound) as exc:
        print(f"sturmrep: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"sturmrep: bad input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
