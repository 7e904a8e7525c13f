"""Command line interface: ``jones-torelli <command> ...``.

Words use the grammar of :func:`jones_torelli.words.parse_word`; the macros
``psi0 = (z1 z2 z1)^4`` and ``iota = z1 z2 z3 z4 z5 z5 z4 z3 z2 z1`` are
available.  Output is JSON (default) or text.  Exit status: 0 if every
check passed, 1 if a check failed, 2 for usage or configuration errors.
"""

import argparse
import json
import os
import random
import re
import sys
from math import gcd
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

from . import expansion, jones, quotients, sp4
from .exact import LaurentPoly, Matrix, TruncSeries
from .words import WordSyntaxError, Word, is_symplectic, parse_word, symplectic_action

CONFIG_ENV = "JONES_TORELLI_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    truncation_degree: int = 3
    span_depth: int = 4
    lattice_depth: int = 6
    order_cap: int = 200
    format: str = "json"
    seed: int = 0
    timing: bool = False

    def validate(self):
        if self.truncation_degree < 0:
            raise ConfigError("truncation_degree must be >= 0")
        if self.span_depth < 1 or self.lattice_depth < 1:
            raise ConfigError("depths must be >= 1")
        if self.order_cap < 1:
            raise ConfigError("order_cap must be >= 1")
        if self.format not in ("json", "text"):
            raise ConfigError("format must be json or text")
        return self


def load_config(path):
    """Read ``key = value`` lines (``#`` comments allowed) into a RunConfig."""
    cfg = RunConfig()
    types = {f.name: f.type for f in fields(RunConfig)}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in types:
            raise ConfigError(f"{path}:{n}: unknown key {key!r}")
        typ = types[key]
        try:
            if typ in (bool, "bool"):
                val = value.lower() in ("1", "true", "yes", "on")
            elif typ in (int, "int"):
                val = int(value)
            else:
                val = value
        except ValueError as e:
            raise ConfigError(f"{path}:{n}: bad value for {key}") from e
        setattr(cfg, key, val)
    return cfg.validate()


# ---------------------------------------------------------------------------
# serialization


def encode(x):
    """JSON-safe exact encoding: rationals as strings, Laurent polys as maps."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, LaurentPoly):
        return {str(e): c for e, c in x.terms()}
    if isinstance(x, TruncSeries):
        return [str(c) for c in x.coeffs]
    if isinstance(x, Matrix):
        return [[encode(a) for a in r] for r in x.rows]
    if isinstance(x, sp4.Weight):
        return weight_label(x)
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, sp4.Weight) else weight_label(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    return str(x)


def weight_label(w):
    parts = []
    for coeff, name in ((w.a, "L1"), (w.b, "L2")):
        if coeff:
            c = "" if coeff == 1 else ("-" if coeff == -1 else str(coeff))
            parts.append(f"{c}{name}")
    return "+".join(parts).replace("+-", "-") or "0"


def end_vector_label(v):
    terms = []
    for k, c in enumerate(v):
        if c:
            i, j = divmod(k, 5)
            coeff = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            terms.append(f"{coeff}e{i + 1}{j + 1}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


class Report:
    def __init__(self, command, config):
        self.command = command
        self.config = config
        self.results = {}
        self.checks = []

    def check(self, name, expected, actual, source, status=None):
        ok = expected == actual
        self.checks.append({
            "name": name,
            "expected": encode(expected),
            "source": source,
            "actual": encode(actual),
            "pass": ok,
            "status": status or ("pass" if ok else "fail"),
        })
        return ok

    @property
    def passed(self):
        return all(c["pass"] for c in self.checks)

    def to_dict(self):
        return {
            "command": self.command,
            "config": asdict(self.config),
            "results": encode(self.results),
            "checks": self.checks,
            "passed": self.passed,
        }

    def render(self, fmt):
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2, sort_keys=False)
        lines = [f"# {self.command}"]
        for key, value in self.results.items():
            if isinstance(value, str) and "\n" in value:
                lines.append(f"{key}:")
                lines.append(value)
            else:
                lines.append(f"{key}: {json.dumps(encode(value))}")
        for c in self.checks:
            mark = "PASS" if c["pass"] else c["status"].upper()
            lines.append(f"[{mark}] {c['name']} ({c['source']})")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def parse_rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"bad rational {text!r}") from e


def cmd_rho(args, cfg):
    w = parse_word(args.word)
    rep = Report(f"rho eval {args.word}", cfg)
    if args.specialize:
        m = re.fullmatch(r"t\s*=\s*(.+)", args.specialize.strip())
        if not m:
            raise ConfigError("--specialize expects t=<rational>")
        value = parse_rational(m.group(1))
        if value == 0:
            raise ConfigError("cannot specialize at t = 0")
        rep.results["t"] = value
        rep.results["matrix"] = jones.rho_specialize(w, value)
    else:
        rep.results["matrix"] = jones.rho_evaluate(w)
    return rep


def cmd_phi(args, cfg):
    k = cfg.truncation_degree if args.degree is None else args.degree
    if k < 0:
        raise ConfigError("--degree must be >= 0")
    m = expansion.phi_truncated(parse_word(args.word), k)
    rep = Report(f"phi {args.word} --degree {k}", cfg)
    rep.results["order"] = k
    rep.results["coefficients"] = [expansion.coefficient(m, i) for i in range(k + 1)]
    return rep


def cmd_delta(args, cfg):
    w = parse_word(args.word)
    d = expansion.delta_k(w, args.k)
    rep = Report(f"delta {args.word} --k {args.k}", cfg)
    rep.results["degree"] = d.degree
    rep.results["matrix"] = d.matrix
    rep.results["identified"] = end_vector_label(sp4.graded_identification(d))
    return rep


def cmd_fdeg(args, cfg):
    k_max = args.max if args.max is not None else cfg.truncation_degree
    deg = expansion.filtration_degree(parse_word(args.word), k_max)
    rep = Report(f"fdeg {args.word} --max {k_max}", cfg)
    rep.results["degree"] = deg if deg is not None else f"exceeds bound {k_max}"
    return rep


def resolve_module(spec):
    """``full``, ``gamma02``, ``gamma20``, ``gamma00``, ``C<k>`` or ``[A,B]``."""
    spec = spec.replace(" ", "")
    named = {"full": sp4.full_space, "gamma02": sp4.gamma02, "gamma20": sp4.gamma20, "gamma00": sp4.gamma00}
    if spec in named:
        return named[spec]()
    m = re.fullmatch(r"C(\d+)", spec)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise ConfigError("C<k> needs k >= 1")
        c1 = ck = sp4.gamma02()
        for _ in range(k - 1):
            ck = sp4.bracket_module(c1, ck)
        return ck
    if spec.startswith("[") and spec.endswith("]"):
        inner = spec[1:-1]
        depth = 0
        for i, ch in enumerate(inner):
            depth += ch == "["
            depth -= ch == "]"
            if ch == "," and depth == 0:
                return sp4.bracket_module(resolve_module(inner[:i]), resolve_module(inner[i + 1:]))
    raise ConfigError(f"unknown submodule spec {spec!r}")


def primitive(v):
    """Scale a rational vector to coprime integers with positive leading entry."""
    den = 1
    for c in v:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    lead = next((c for c in ints if c), 1)
    g = (g or 1) * (1 if lead > 0 else -1)
    return tuple(c // g for c in ints)


def reference_table(s):
    rows = []
    for mu in sp4.TABLE_ORDER:
        basis = sp4.weight_space(s, mu)
        if basis:
            rows.append(f"{weight_label(mu):>10} | " + ", ".join("{" + end_vector_label(primitive(v)) + "}" for v in basis))
    return "\n".join(rows)


def cmd_weights(args, cfg):
    if args.space == "bracket":
        spec = f"C{args.k}"
    else:
        spec = args.space
    s = resolve_module(spec)
    rep = Report(f"weights --space {args.space}" + (f" --k {args.k}" if args.space == "bracket" else ""), cfg)
    rep.results["dimension"] = s.dim
    rep.results["weights"] = sp4.weight_table(s)
    if args.paper_table:
        rep.results["table"] = reference_table(s)
    return rep


def cmd_identify(args, cfg):
    s = resolve_module(args.spec)
    rep = Report(f"identify {args.spec}", cfg)
    rep.results["dimension"] = s.dim
    rep.results["constituents"] = sp4.identify_module(s)
    return rep


def run_theorem_a(rep, depth):
    d = expansion.delta_k(Word(["z1", "z2", "z1"] * 4), 1)
    basis, info = sp4.orbit_span(d, depth)
    rep.results["theoremA_rank_by_depth"] = info["rank_by_depth"]
    rep.results["theoremA_sp_stable"] = info["sp_stable"]
    rank = len(basis)
    status = None if rank == 14 else "insufficient depth"
    rep.check("Theorem A: orbit span of delta_1(psi0) has rank 14", 14, rank, "reference", status)
    if rank == 14:
        rep.check("Theorem A: orbit span equals Gamma_{0,2}", True, sp4.Submodule(basis) == sp4.gamma02(), "reference")
    rep.check("Theorem A: span is Sp-stable", True, info["sp_stable"], "derived")


def cmd_theorem_a(args, cfg):
    depth = args.depth or cfg.span_depth
    rep = Report(f"theoremA --depth {depth}", cfg)
    run_theorem_a(rep, depth)
    return rep


def run_theorem_b(rep, max_k):
    results = sp4.alternation(max_k)
    rep.results["theoremB"] = {str(k): labels for k, labels in results}
    for k, labels in results:
        expected = ["Gamma_{2,0}"] if k % 2 == 0 else ["Gamma_{0,2}"]
        rep.check(f"Theorem B: C_{k} decomposes as {expected[0]}", expected, labels, "reference")


def cmd_theorem_b(args, cfg):
    rep = Report(f"theoremB --max-k {args.max_k}", cfg)
    if args.max_k < 1:
        raise ConfigError("--max-k must be >= 1")
    run_theorem_b(rep, args.max_k)
    return rep


def run_quotient(rep, degree, depth, cap, timing):
    if degree == 1:
        res = quotients.degree1_report(depth)
        rep.results["degree1"] = {
            "order": res.order if res.order is not None else "infinite",
            "lattice_rank": res.lattice.rank,
            "relations_rank": res.relations.rank,
            "elementary_divisors": res.divisors,
            "stabilized_at_depth": res.stabilized_at,
            "rank_by_depth": res.rank_by_depth,
            "sp_stable": res.sp_stable,
            "denominator": res.denominator,
        }
        if timing:
            rep.results["degree1"]["seconds"] = round(res.seconds, 3)
        rep.check("Z_phi1 has order 10", 10, res.order, "reference")
        return res.order
    try:
        res = quotients.degree2_report(depth, cap)
    except quotients.OrderCapExceeded as e:
        rep.results["degree2"] = {"order": f"exceeds cap {e.cap}"}
        rep.check("Z_phi2 has order 10", 10, None, "reference", "exceeds cap")
        return None
    rep.results["degree2"] = {"order": res.order, "ranks": res.ranks(), "closure": res.closure_rounds}
    if timing:
        rep.results["degree2"]["seconds"] = round(res.seconds, 3)
    rep.check("Z_phi2 has order 10", 10, res.order, "reference")
    return res.order


def cmd_quotient(args, cfg):
    depth = args.depth or cfg.lattice_depth
    cap = args.cap or cfg.order_cap
    rep = Report(f"quotient --degree {args.degree} --depth {depth}", cfg)
    run_quotient(rep, args.degree, depth, cap, cfg.timing)
    return rep


def cmd_verify(args, cfg):
    rep = Report("verify", cfg)
    rho = jones.rho_evaluate
    W = parse_word

    braid = all(rho(W(f"z{i} z{i + 1} z{i}")) == rho(W(f"z{i + 1} z{i} z{i + 1}")) for i in range(1, 5))
    far = all(rho(W(f"z{i} z{j}")) == rho(W(f"z{j} z{i}")) for i in range(1, 6) for j in range(i + 2, 6))
    rep.check("braid relations among rho(z1..z5)", True, braid and far, "reference")
    rep.check("rho(xi)^6 = Id", True, (rho(W("xi")) ** 6).is_identity(), "reference")
    iota = rho(W("iota"))
    rep.check("rho(iota)^2 = Id", True, (iota @ iota).is_identity(), "derived")
    rep.check("rho(iota) is central", True, all(iota @ rho(W(f"z{i}")) == rho(W(f"z{i}")) @ iota for i in range(1, 6)), "derived")
    rep.check("rho(psi0) closed form", True, rho(W("psi0")) == jones.psi0_closed_form(), "reference")
    rep.check("rho(psi0) at t = 1 is Id", True, jones.rho_specialize(W("psi0"), 1).is_identity(), "reference")
    rep.check("rho(psi0) at t = -1 is Id", True, jones.rho_specialize(W("psi0"), -1).is_identity(), "reference")
    rep.check("P(z1)F = -FZ and P(xi)F = -FX", True, jones.check_minus_one_equivalence()[0], "reference")

    d = expansion.delta_k(W("psi0"), 1)
    target = jones.F @ Matrix.diagonal([6, 6, -24, 6, 6]) @ jones.F_INV
    rep.check("delta_1(psi0) = F diag(6,6,-24,6,6) F^-1", True, d.matrix == target, "reference")
    ident = sp4.graded_identification(d)
    expected = sp4.from_matrix(Matrix.diagonal([6, 6, -24, 6, 6]))
    rep.check("identification of delta_1(psi0)", True, ident == expected, "reference")

    end_dims = [1, 2, 2, 2, 1, 2, 5, 2, 1, 2, 2, 2, 1]
    rep.check("weight-space dimensions of End(Gamma_{0,1})", end_dims, list(sp4.weight_table(sp4.full_space()).values()), "reference")
    g02_dims = [1, 1, 1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 1]
    g02 = sp4.gamma02()
    rep.check("weight-space dimensions of Gamma_{0,2}", g02_dims, list(sp4.weight_table(g02).values()), "reference")
    rep.check("weight-space bases of End(Gamma_{0,1})", True, sp4.matches_table(sp4.full_space(), sp4.END_WEIGHT_TABLE), "reference")
    rep.check("weight-space bases of Gamma_{0,2}", True, sp4.matches_table(g02, sp4.GAMMA02_WEIGHT_TABLE), "reference")
    rep.check("decomposition 14 + 10 + 1", ["Gamma_{0,0}", "Gamma_{0,2}", "Gamma_{2,0}"],
              sp4.identify_module(sp4.full_space()), "reference")
    br = sp4.bracket_module(g02, g02)
    wt = sp4.weight_table(br)
    dims = [wt.get(sp4.Weight(2, 2), 0), wt.get(sp4.Weight(2, 0), 0), wt.get(sp4.Weight(0, 0), 0)]
    rep.check("[G02, G02] weight dims at 2(L1+L2), 2L1, 0", [0, 1, 2], dims, "reference")
    rep.check("[G02, G02] = G20", ["Gamma_{2,0}"], sp4.identify_module(br), "reference")
    rep.check("[G02, G20] = G02", ["Gamma_{0,2}"], sp4.identify_module(sp4.bracket_module(g02, br)), "reference")

    run_theorem_a(rep, cfg.span_depth)
    run_theorem_b(rep, 6)
    o1 = run_quotient(rep, 1, cfg.lattice_depth, cfg.order_cap, cfg.timing)
    o2 = run_quotient(rep, 2, cfg.lattice_depth, cfg.order_cap, cfg.timing)
    if o1 and o2:
        rep.check("degree-1 order divides degree-2 order", 0, o2 % o1, "derived")

    rng = random.Random(cfg.seed)
    letters = ["z1", "z2", "z3", "z4", "z5", "xi"]
    ok = True
    for _ in range(10):
        u, v = (parse_word(" ".join(rng.choice(letters) + rng.choice(["", "'"]) for _ in range(rng.randint(0, 6))) or "1")
                for _ in range(2))
        ok &= rho(u * v) == rho(u) @ rho(v)
        ok &= symplectic_action(u * v) == symplectic_action(u) @ symplectic_action(v)
        ok &= is_symplectic(symplectic_action(u))
    rep.results["random_seed"] = cfg.seed
    rep.check("seeded homomorphism spot checks", True, ok, "derived")
    return rep


COMMANDS = {
    "rho": cmd_rho,
    "phi": cmd_phi,
    "delta": cmd_delta,
    "fdeg": cmd_fdeg,
    "weights": cmd_weights,
    "identify": cmd_identify,
    "theoremA": cmd_theorem_a,
    "theoremB": cmd_theorem_b,
    "quotient": cmd_quotient,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser():
    p = _Parser(prog="jones-torelli", description=__doc__.split("\n\n")[0],
                epilog="Word macros: psi0 = (z1 z2 z1)^4, iota = z1 z2 z3 z4 z5 z5 z4 z3 z2 z1.")
    p.add_argument("--config", help=f"key=value config file (default: ${CONFIG_ENV})")
    p.add_argument("--format", choices=["json", "text"])
    p.add_argument("--seed", type=int)
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds in reports")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("rho", help="evaluate the Jones representation")
    r.add_argument("action", choices=["eval"])
    r.add_argument("word")
    r.add_argument("--specialize", metavar="t=VALUE")

    r = sub.add_parser("phi", help="truncated expansion at t = -exp(h)")
    r.add_argument("word")
    r.add_argument("--degree", type=int)

    r = sub.add_parser("delta", help="graded class delta_k of a Torelli word")
    r.add_argument("word")
    r.add_argument("--k", type=int, default=1)

    r = sub.add_parser("fdeg", help="filtration degree of a Torelli word")
    r.add_argument("word")
    r.add_argument("--max", type=int)

    r = sub.add_parser("weights", help="weight table of a submodule of End(Gamma_{0,1})")
    r.add_argument("--space", choices=["full", "gamma02", "gamma20", "bracket"], default="full")
    r.add_argument("--k", type=int, default=2, help="bracket depth C_k for --space bracket")
    r.add_argument("--paper-table", action="store_true", help="render weight-space bases in table order")

    r = sub.add_parser("identify", help="irreducible constituents of a submodule")
    r.add_argument("spec", help="full | gamma02 | gamma20 | gamma00 | C<k> | [A,B]")

    r = sub.add_parser("theoremA", help="orbit span of delta_1(psi0)")
    r.add_argument("--depth", type=int)

    r = sub.add_parser("theoremB", help="alternation of bracket modules")
    r.add_argument("--max-k", type=int, default=6)

    r = sub.add_parser("quotient", help="order of the cyclic quotient Z_phi(k)")
    r.add_argument("--degree", type=int, choices=[1, 2], required=True)
    r.add_argument("--depth", type=int)
    r.add_argument("--cap", type=int)

    sub.add_parser("verify", help="run every check")
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        path = args.config or os.environ.get(CONFIG_ENV)
        cfg = load_config(path) if path else RunConfig()
        if args.format:
            cfg.format = args.format
        if args.seed is not None:
            cfg.seed = args.seed
        if args.timing:
            cfg.timing = True
        cfg.validate()
        report = COMMANDS[args.command](args, cfg)
    except (ConfigError, WordSyntaxError, expansion.NotTorelliError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(report.render(cfg.format))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
