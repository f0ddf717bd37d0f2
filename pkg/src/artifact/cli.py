"""Command line front end.

Exit codes: 0 success, 2 invalid input, 3 theorem-violation report,
4 search miss or internal failure.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import click

from . import reference as ref
from .cfrac import INF, hj_dual, hj_eval, hj_expand
from .incidence import IncidenceMatrix, canonical, enumerate_all
from .io import InputError, dumps, load_resolution, matrix_from_json, presolution_to_dot, star_from_json
from .mmp import MMPError, run_mmp, trace_to_dot, trace_to_json
from .sandwich import usual_sandwich_cqss
from .stevens import RealizationMiss, p_resolutions_cqss, realize_all
from .whs import (
    SynthesisError,
    TheoremViolation,
    classify_case,
    construct_presolution,
    surjectivity_report,
    verify_phi_pi,
)

EXIT_INPUT, EXIT_VIOLATION, EXIT_MISS = 2, 3, 4


def _fmt_seq(seq) -> str:
    return "[" + ",".join(str(x) for x in seq) + "]"


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _fail(code: int, msg: str, payload: dict | None = None) -> None:
    click.echo(f"error: {msg}", err=True)
    if payload:
        click.echo(dumps(payload), nl=False)
    sys.exit(code)


def _emit_matrix(M: IncidenceMatrix, fmt: str) -> None:
    if fmt == "json":
        click.echo(dumps(M.to_json()), nl=False)
    elif fmt == "csv":
        click.echo(M.to_csv(), nl=False)
    else:
        click.echo(M.pretty())


class _Group(click.Group):
    """Maps library exceptions onto exit codes."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except TheoremViolation as exc:
            _fail(EXIT_VIOLATION, f"theorem violation: {exc}", {"violation": str(exc), "witness": exc.witness})
        except (SynthesisError, RealizationMiss, MMPError) as exc:
            _fail(EXIT_MISS, str(exc))
        except (InputError, ValueError) as exc:
            _fail(EXIT_INPUT, str(exc))


@click.group(cls=_Group)
@click.version_option(package_name="artifact")
def main() -> None:
    """Continued fractions, P-resolutions, MMP and star singularities."""


# -- continued fractions ----------------------------------------------------


@main.group(cls=_Group)
def cf() -> None:
    """Hirzebruch-Jung continued fractions."""


@cf.command("expand")
@click.argument("n", type=int)
@click.argument("q", type=int)
def cf_expand(n: int, q: int) -> None:
    """Expansion of n/q."""
    click.echo(_fmt_seq(hj_expand(n, q)))


@cf.command("eval")
@click.argument("entries", nargs=-1, type=int, required=True)
def cf_eval(entries) -> None:
    """Value of [a_1,...,a_r]."""
    v = hj_eval(entries)
    click.echo("inf" if v is INF else str(v))


@cf.command("dual")
@click.argument("entries", nargs=-1, type=int, required=True)
def cf_dual(entries) -> None:
    """Dual expansion, the expansion of n/(n-q)."""
    click.echo(_fmt_seq(hj_dual(entries)))


# -- cyclic quotients ---------------------------------------------------------


@main.command()
@click.argument("n", type=int)
@click.argument("q", type=int)
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
@click.option("--realize", is_flag=True, help="Attach a marked resolution graph to each row.")
@click.option("--depth", default=3, show_default=True, help="Blow-up bound for --realize.")
def presolutions(n: int, q: int, fmt: str, realize: bool, depth: int) -> None:
    """P-resolutions of 1/n(1,q): k-sequences, triangulations and matrices."""
    rows = realize_all(n, q, depth) if realize else p_resolutions_cqss(n, q)
    if fmt == "json":
        click.echo(dumps([r.to_json() for r in rows]), nl=False)
        return
    click.echo(f"1/{n}({1},{q})  chain {_fmt_seq(rows[0].chain)}  dual {_fmt_seq(rows[0].b)}  {len(rows)} P-resolution(s)")
    for i, r in enumerate(rows, 1):
        k = _fmt_seq(r.k) if r.k is not None else "minimal"
        tri = " ".join("".join(v for v in t) for t in r.theta.to_json()) if r.theta else "-"
        line = f"{i:>3}  k={k:<16} triangles: {tri}"
        if realize:
            marks = r.realization.mark_weights() if r.realization is not None else "unrealized"
            line += f"  marks={marks}"
        click.echo(line)
        for ln in r.matrix.pretty().splitlines():
            click.echo("       " + ln)


# -- MMP --------------------------------------------------------------------


@main.command()
@click.argument("file")
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table")
@click.option("--trace-dot", type=click.Path(dir_okay=False, writable=True), help="Write one DOT graph per step.")
@click.option("--trace-json", type=click.Path(dir_okay=False, writable=True), help="Write the step trace as JSON.")
@click.option("--seed", type=int, default=None, help="Draw moves at random with this seed.")
@click.option("--budget", default=10_000, show_default=True, help="Step cap.")
def mmp(file: str, fmt: str, trace_dot, trace_json, seed, budget: int) -> None:
    """Run the MMP on the P-resolution described in FILE ('-' for stdin)."""
    res, st = load_resolution(_read_json(file))
    rng = random.Random(seed) if seed is not None else None
    out = run_mmp(res, st, rng=rng, budget=budget)
    if trace_dot:
        Path(trace_dot).write_text(trace_to_dot(out.trace))
    if trace_json:
        Path(trace_json).write_text(trace_to_json(out.trace) + "\n")
    if fmt == "json":
        click.echo(dumps(out.to_json()), nl=False)
    else:
        _emit_matrix(out.matrix, fmt)


# -- star singularities -----------------------------------------------------


def _star_and_matrix(spec: str, matrix: str | None, need: bool):
    doc = _read_json(spec)
    X = star_from_json(doc)
    mdoc = _read_json(matrix) if matrix else doc.get("matrix")
    if need and mdoc is None:
        raise InputError("a matrix is required (--matrix FILE or a 'matrix' key in the star file)")
    M = matrix_from_json(mdoc) if mdoc is not None else None
    return X, M


@main.group(cls=_Group)
def whs() -> None:
    """Star-shaped singularities with a big central node."""


_spec = click.argument("spec")
_matrix = click.option("--matrix", type=str, default=None, help="Matrix JSON (rows + matrix).")
_depth = click.option("--depth", default=3, show_default=True, help="Blow-up bound for chain subproblems.")


@whs.command("classify")
@_spec
@_matrix
def whs_classify(spec: str, matrix) -> None:
    """Case A / B1 / B2 of a combinatorial incidence matrix."""
    X, M = _star_and_matrix(spec, matrix, True)
    click.echo(dumps(classify_case(M, X).to_json()), nl=False)


@whs.command("construct")
@_spec
@_matrix
@_depth
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json")
def whs_construct(spec: str, matrix, depth: int, fmt: str) -> None:
    """Build the P-resolution of a matrix."""
    X, M = _star_and_matrix(spec, matrix, True)
    sp = construct_presolution(M, X, depth=depth)
    if fmt == "dot":
        click.echo(presolution_to_dot(sp.res), nl=False)
    else:
        out = sp.to_json()
        out["case"] = sp.tag.to_json()
        click.echo(dumps(out), nl=False)


@whs.command("verify")
@_spec
@_matrix
@_depth
def whs_verify(spec: str, matrix, depth: int) -> None:
    """Construct, run the MMP and compare with the input matrix."""
    X, M = _star_and_matrix(spec, matrix, True)
    sp = construct_presolution(M, X, depth=depth)
    rep = verify_phi_pi(M, X, sp)
    click.echo(dumps({"ok": rep.ok, "route": rep.route, "marks": sp.mark_weights(), "diff": rep.diff}), nl=False)
    if not rep.ok:
        sys.exit(EXIT_MISS)


@whs.command("surjectivity")
@_spec
@_depth
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
def whs_surjectivity(spec: str, depth: int, fmt: str) -> None:
    """Try every enumerated matrix of the star."""
    X, _ = _star_and_matrix(spec, None, False)
    rep = surjectivity_report(X, depth)
    click.echo(dumps(rep.to_json()) if fmt == "json" else rep.table(), nl=fmt != "json")
    if not rep.complete:
        bad = {e.status for e in rep.entries if e.status != "ok"}
        sys.exit(EXIT_VIOLATION if bad == {"violation"} else EXIT_MISS)


# -- reference instances ----------------------------------------------------


def _check(name: str, ok: bool, results: list) -> None:
    results.append(ok)
    click.echo(f"{'ok  ' if ok else 'FAIL'}  {name}")


@main.command()
def reproduce() -> None:
    """Recompute every worked reference instance; exit 0 when all agree."""
    results: list[bool] = []
    _check("19/11 expands to [2,4,3]", hj_expand(ref.N19, ref.Q19) == ref.CHAIN_19_11, results)
    _check("dual is [3,2,3,2]", hj_dual(ref.CHAIN_19_11) == ref.DUAL_19_11, results)

    descs = p_resolutions_cqss(ref.N19, ref.Q19)
    _check("three k-sequences", {d.k for d in descs} == ref.K_19_11, results)
    for d in descs:
        want = ref.NPP_19_11[d.k]
        _check(f"NPP matrix for k={_fmt_seq(d.k)}", d.matrix.as_rows() == want, results)

    st = usual_sandwich_cqss(ref.CHAIN_19_11)
    for name, res in ref.presolutions_19_11().items():
        got = run_mmp(res, st).matrix
        want = IncidenceMatrix.from_rows(got.rows, ref.MMP_19_11[name])
        _check(f"MMP on {name}", canonical(got) == canonical(want), results)

    from .whs import StarSingularity

    X = StarSingularity(ref.STAR_D, ref.STAR_BRANCHES)
    for case, data, marks in (("CaseA", ref.CASE_A, ref.CASE_A_MARKS), ("CaseB2", ref.CASE_B, ref.CASE_B_MARKS)):
        M = ref.star_matrix(data)
        tag = classify_case(M, X)
        sp = construct_presolution(M, X, tag)
        rep = verify_phi_pi(M, X, sp)
        _check(f"star {case}: classified", tag.kind == case, results)
        _check(f"star {case}: marks {marks}", sorted(sp.mark_weights()) == sorted(marks), results)
        _check(f"star {case}: MMP returns the matrix", rep.ok, results)

    R = StarSingularity(ref.T2_D, ref.T2_BRANCHES)
    enum = set(enumerate_all(R.data()))
    fixed = ref.star_matrix(ref.T2_CORRECTED, ref.T2_ROWS)
    _check("d=t+2 matrix is enumerated", canonical(fixed) in enum, results)
    try:
        classify_case(fixed, R)
        _check("d=t+2 matrix is rejected", False, results)
    except TheoremViolation as exc:
        _check("d=t+2 matrix is rejected (more than one branch)", "more than one branch" in str(exc), results)

    click.echo(f"{sum(results)}/{len(results)} checks passed")
    sys.exit(0 if all(results) else EXIT_MISS)


if __name__ == "__main__":
    main()
