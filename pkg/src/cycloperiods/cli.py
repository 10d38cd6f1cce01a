"""Command line front end: verify, emit, and small exact tools.

Exit codes: 0 all checks pass, 1 any check fails, 2 usage or malformed
input, 3 the run could not reach a verdict (underpowered precision or
an unresolved convention ambiguity).
"""

import json
import re
import sys
from fractions import Fraction

import click

from . import covers, intlat, pel, periods, report, stcurve, suite
from .exactfield import (HALF, IUNIT, RHO, ROOT4_3, SQRT3, ZETA,
                         TowerElem, embed, real_sign)


# -- tower literals --------------------------------------------------------

class LiteralError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(\d+\.\d+|\.\d+|\d+|[A-Za-z_]+|\*\*|[()^+\-*/])")

_NAMES = {"i": IUNIT, "zeta": ZETA, "alpha": ROOT4_3,
          "rho": RHO, "sqrt3": SQRT3}


def _tokenize(text):
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise LiteralError(f"cannot read {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise LiteralError(f"expected {want or 'a token'}, got {tok!r}")
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            if self.take() == "+":
                node = node + self.term()
            else:
                node = node - self.term()
        return node

    def term(self):
        node = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op == "*":
                node = node * rhs
            else:
                if rhs.is_zero():
                    raise LiteralError("division by zero")
                node = node / rhs
        return node

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if not tok.isdigit():
                raise LiteralError(f"exponent must be an integer, got {tok!r}")
            n = int(tok)
            if sign < 0:
                if base.is_zero():
                    raise LiteralError("zero to a negative power")
                base = base.inverse()
            return base ** n
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            node = self.expr()
            self.take(")")
            return node
        if tok in _NAMES:
            return _NAMES[tok]
        if re.fullmatch(r"\d+\.\d+|\.\d+|\d+", tok):
            return TowerElem.rational(Fraction(tok))
        raise LiteralError(f"unexpected token {tok!r}")

    def parse(self):
        node = self.expr()
        if self.peek() is not None:
            raise LiteralError(f"trailing input at {self.peek()!r}")
        return node


def parse_tower(text):
    """Exact value from a literal like '(1/2)+(-1)*zeta^3' or '0.25,0.5'.

    A comma splits real and imaginary parts, each again a literal;
    decimals are read exactly as the rationals they denote.
    """
    text = text.strip()
    if not text:
        raise LiteralError("empty literal")
    if "," in text:
        left, right = text.split(",", 1)
        return (_Parser(_tokenize(left)).parse()
                + _Parser(_tokenize(right)).parse() * IUNIT)
    return _Parser(_tokenize(text)).parse()


def _parse_or_usage(text, what):
    try:
        return parse_tower(text)
    except (LiteralError, ZeroDivisionError, ValueError) as exc:
        raise click.UsageError(f"bad {what} literal {text!r}: {exc}")


# -- output helpers --------------------------------------------------------

def _emit_payload(rows, polarization, point, fmt, prec, digits):
    payload = {"format": fmt, "point": {k: str(v) for k, v in point.items()},
               "polarization": intlat.mat_to_json(polarization)}
    if fmt == "exact-json":
        payload["entries"] = [[x.to_json() for x in row] for row in rows]
    else:
        payload["precision_bits"] = prec
        payload["digits"] = digits
        payload["entries"] = [[list(embed(x, prec).decimal(digits))
                               for x in row] for row in rows]
    return payload


def _require_in_ball(z1, z2, prec, digits):
    norm = z1 * z1.conjugate() + z2 * z2.conjugate()
    gap = TowerElem.rational(1) - norm
    if real_sign(gap) <= 0:
        shown = embed(norm, prec).decimal(digits)[0]
        raise click.UsageError(
            f"point outside the unit ball: |z1|^2 + |z2|^2 = {shown} >= 1 "
            f"(certified exactly)")


def _require_upper_half(tau):
    imag_twice = (tau - tau.conjugate()) * IUNIT
    if real_sign(-imag_twice) <= 0:
        raise click.UsageError("tau must have positive imaginary part "
                               "(certified exactly)")


def _read_source(matrix, path, what="matrix"):
    """Raw JSON text from --matrix (inline or @file) or --file."""
    if (matrix is None) == (path is None):
        raise click.UsageError(f"give the {what} with --{what} or --file")
    if path is None and matrix.startswith("@"):
        path, matrix = matrix[1:], None
    if path is not None:
        try:
            with open(path) as fh:
                return fh.read()
        except OSError as exc:
            raise click.UsageError(f"cannot read {path}: {exc}")
    return matrix


def _load_matrix(matrix, path):
    raw = _read_source(matrix, path)
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"matrix is not valid JSON: {exc}")
    try:
        if isinstance(obj, dict):
            return intlat.mat_from_json(obj)
        return [[int(x) for x in row] for row in obj]
    except (KeyError, TypeError, ValueError) as exc:
        raise click.UsageError(f"malformed matrix: {exc}")


def _pipeline(prec):
    """Shared context, mapping an unresolved convention search to exit 3."""
    ctx = suite.SuiteContext(prec)
    try:
        ctx.prym_family
    except pel.ConventionError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)
    return ctx


# -- commands ---------------------------------------------------------------

@click.group()
def main():
    """Exact period-matrix checks for the hexagonal genus-4 family."""


@main.command()
@click.option("--prec", default=128, show_default=True,
              help="working precision in bits (minimum 16)")
@click.option("--all", "everything", is_flag=True,
              help="run every check (the default)")
@click.option("--only", default=None, metavar="TAG",
              help="run only the checks with this tag or id")
@click.option("--strict", is_flag=True,
              help="treat documented display divergences as failures")
@click.option("--json", "as_json", is_flag=True, help="machine readable output")
def verify(prec, everything, only, strict, as_json):
    """Run the verification suite and exit 0/1/3."""
    if prec < 16:
        raise click.UsageError("--prec must be at least 16")
    if everything and only is not None:
        raise click.UsageError("--all and --only exclude each other")
    rep = suite.run_all(prec=prec, only=only, strict=strict)
    if only is not None and not rep.checks:
        known = sorted({t for _, t in suite.check_tags()}
                       | {c for c, _ in suite.check_tags()})
        raise click.UsageError(f"nothing matches --only {only!r}; "
                               f"known: {', '.join(known)}")
    click.echo(rep.dumps() if as_json else rep.render())
    sys.exit(rep.exit_code())


@main.command()
@click.argument("which", type=click.Choice(["prym", "genus4"]))
@click.option("--special", is_flag=True,
              help="the distinguished fiber instead of a family point")
@click.option("--tau", default=None, help="base parameter (genus4 only)")
@click.option("--z1", default=None, help="first ball coordinate")
@click.option("--z2", default=None, help="second ball coordinate")
@click.option("--format", "fmt", default="exact-json", show_default=True,
              type=click.Choice(["exact-json", "decimal"]))
@click.option("--prec", default=128, show_default=True,
              help="bits for decimal output and domain certificates")
@click.option("--digits", default=30, show_default=True,
              help="fractional digits for decimal output")
def emit(which, special, tau, z1, z2, fmt, prec, digits):
    """Print a period matrix at an exact parameter point."""
    if prec < 16:
        raise click.UsageError("--prec must be at least 16")
    have_z = z1 is not None or z2 is not None
    if special and have_z:
        raise click.UsageError("--special excludes --z1/--z2")
    if have_z and (z1 is None or z2 is None):
        raise click.UsageError("need both --z1 and --z2")

    if which == "prym":
        if tau is not None:
            raise click.UsageError("prym takes no --tau")
        if special or not have_z:
            rows = stcurve.prym_special()
            payload = _emit_payload(rows, stcurve.PRYM_POLARIZATION,
                                    {}, fmt, prec, digits)
            click.echo(json.dumps(payload, indent=2, sort_keys=True))
            return
        z1v = _parse_or_usage(z1, "--z1")
        z2v = _parse_or_usage(z2, "--z2")
        _require_in_ball(z1v, z2v, prec, digits)
        ctx = _pipeline(prec)
        point = {"z1": z1v, "z2": z2v}
        rows = ctx.prym_family.evaluate(point)
        payload = _emit_payload(rows, stcurve.PRYM_POLARIZATION,
                                point, fmt, prec, digits)
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
        return

    if tau is None:
        raise click.UsageError("genus4 needs --tau")
    tauv = _parse_or_usage(tau, "--tau")
    _require_upper_half(tauv)
    pol = intlat.standard_symplectic(4)
    if not have_z:
        rows = stcurve.genus4_period_matrix().evaluate({"tau": tauv})
        payload = _emit_payload(rows, pol, {"tau": tauv}, fmt, prec, digits)
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
        return
    z1v = _parse_or_usage(z1, "--z1")
    z2v = _parse_or_usage(z2, "--z2")
    _require_in_ball(z1v, z2v, prec, digits)
    ctx = _pipeline(prec)
    point = {"tau": tauv, "z1": z1v, "z2": z2v}
    rows = ctx.genus4_family.evaluate(point)
    payload = _emit_payload(rows, pol, point, fmt, prec, digits)
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


@main.group()
def tools():
    """Small exact lattice and period utilities."""


@tools.command()
@click.option("--matrix", default=None,
              help="integer matrix, JSON rows or @file")
@click.option("--file", "path", default=None, type=click.Path(),
              help="file holding the matrix JSON")
def snf(matrix, path):
    """Smith normal form and divisor chain."""
    A = _load_matrix(matrix, path)
    try:
        U, D, V = intlat.smith_normal_form(A)
    except (ValueError, IndexError) as exc:
        raise click.UsageError(f"not a valid integer matrix: {exc}")
    payload = {"divisors": intlat.snf_divisors(A),
               "U": U, "D": D, "V": V}
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


@tools.command("symplectic-basis")
@click.option("--matrix", default=None,
              help="alternating integer matrix, JSON rows or @file")
@click.option("--file", "path", default=None, type=click.Path(),
              help="file holding the matrix JSON")
def symplectic_basis(matrix, path):
    """Frobenius basis and polarization type of an alternating form."""
    A = _load_matrix(matrix, path)
    try:
        S, divisors = intlat.symplectic_basis(A)
    except intlat.DegenerateFormError as exc:
        raise click.UsageError(f"form is degenerate: {exc}")
    except ValueError as exc:
        raise click.UsageError(str(exc))
    payload = {"basis": S, "divisors": list(divisors)}
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


@tools.command("riemann-check")
@click.option("--matrix", default=None,
              help="period matrix JSON (as produced by to_json), or @file")
@click.option("--file", "path", default=None, type=click.Path(),
              help="file holding the period matrix JSON")
@click.option("--at", "assignments", multiple=True, metavar="NAME=LITERAL",
              help="parameter values for the positivity test")
@click.option("--prec", default=128, show_default=True)
def riemann_check(matrix, path, assignments, prec):
    """First bilinear relation, and positivity at a chosen point."""
    if prec < 16:
        raise click.UsageError("--prec must be at least 16")
    raw = _read_source(matrix, path)
    try:
        pm = periods.PeriodMatrix.from_json(json.loads(raw))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise click.UsageError(f"malformed period matrix: {exc}")
    point = {}
    for item in assignments:
        if "=" not in item:
            raise click.UsageError(f"--at needs NAME=LITERAL, got {item!r}")
        name, text = item.split("=", 1)
        point[name.strip()] = _parse_or_usage(text, f"--at {name}")
    missing = sorted(set(pm.params) - set(point))
    if missing:
        raise click.UsageError(f"missing --at values for {missing}")
    relation = periods.first_relation_holds(pm)
    verdict, minors = periods.riemann_positivity(
        pm, point, prec=prec, sign=stcurve.POSITIVITY_SIGN)
    payload = {"first_relation": relation,
               "positivity": verdict,
               "precision_bits": prec,
               "minor_ranges": [[k, lo, hi] for k, lo, hi in minors]}
    click.echo(json.dumps(payload, indent=2, sort_keys=True))
    if not relation or verdict == "not-positive":
        sys.exit(1)
    if verdict == "inconclusive":
        sys.exit(3)


@tools.command("covers")
@click.option("--n", required=True, type=int, help="order of the cyclic group")
@click.option("--exponents", required=True,
              help="comma separated local rotation data, e.g. 1,1,1,3")
def covers_cmd(n, exponents):
    """Character table (rank and form dimension) of a cyclic cover."""
    try:
        data = [int(x) for x in exponents.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise click.UsageError(f"bad --exponents: {exc}")
    try:
        cover = covers.CyclicCover(n, data)
        table = cover.table()
        genus = cover.genus()
    except ValueError as exc:
        raise click.UsageError(f"invalid branch data: {exc}")
    click.echo(f"{'k':>3} {'rank':>5} {'dim':>4}")
    for k, rank, dim in table:
        click.echo(f"{k:>3} {rank:>5} {dim:>4}")
    click.echo(f"genus {genus}")


if __name__ == "__main__":
    main()
