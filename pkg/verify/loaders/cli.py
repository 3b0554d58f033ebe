#!/usr/bin/env python3
"""
supersym command line.

    supersym act --perm "(1 2)" --poly "t1*t2"
    supersym --json verify-lemma1 --g 2 --d 2 --w 2
    supersym divisor sum --divisor a.json --other b.json
    supersym roundtrip --random 500

Exit codes: 0 verified, 1 mismatch, 2 usage or parse error.
"""

import json
import logging
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import click
import typer

from core.config import settings
from core.errors import NotFoundError, ParseError, SuperAlgebraError
from core.logger import setup_logger
from models.curve import spin_structure
from models.divisor import BaseMorphism
from models.documents import CommandReport
from models.symmetric import Permutation, TensorPowerContext
from verify.clients.document_reader import divisor_to_document, load_divisor, load_morphism
from verify.clients.polynomial_parser import parse_context, parse_polynomial, parse_unit
from verify.loaders.instance_loader import RoundTripBatchLoader
from verify.processors.invariants import counterexample_n2, elementary_symmetric, odd_symmetric, verify_lemma1
from verify.processors.representability import (
    classify,
    roundtrip_check,
    susy_expansion,
    susy_roundtrip,
    susy_universal_divisor,
    universal_base,
    universal_divisor,
    verify_theorem5,
)
from verify.processors.superdivisor import (
    QuotientPresentation,
    char_poly,
    divisor_sum,
    pullback,
    reduce,
)
from verify.processors.symmetric_action import act, is_invariant, reynolds

logger = logging.getLogger(__name__)

DEFAULT_BASE = 'even z; odd t'

app = typer.Typer(add_completion=False, no_args_is_help=True, help='Exact checks for supersymmetric products and superdivisors')
divisor_app = typer.Typer(no_args_is_help=True, help='Superdivisor arithmetic on JSON divisor files')
app.add_typer(divisor_app, name='divisor')


@dataclass
class CliState:
    json_output: bool = False
    seed: int = settings.seed
    max_degree: int = settings.max_degree
    timing: bool = False
    started: float = 0.0
    report: Optional[CommandReport] = None


def _state(ctx: typer.Context) -> CliState:
    return ctx.find_root().ensure_object(CliState)


def _emit(ctx: typer.Context, report: CommandReport, lines: List[str]):
    state = _state(ctx)
    if state.timing:
        report.runtime_ms = int((time.time() - state.started) * 1000)
    state.report = report
    if state.json_output:
        typer.echo(report.model_dump_json())
        return
    for line in lines:
        typer.echo(line)
    if report.witness and report.status == 'fail':
        for witness in report.witness:
            typer.echo(f"witness: {witness}")
    typer.echo(f"status: {report.status}")
    if state.timing:
        typer.echo(f"runtime_ms: {report.runtime_ms}")


def _largest_index(text: str) -> int:
    indices = [int(n) for n in re.findall(r'[A-Za-z_]+?(\d+)\b', text)]
    return max(indices, default=1)


@app.callback()
def global_options(
    ctx: typer.Context,
    json_output: bool = typer.Option(False, '--json', help='Print the command report as a single JSON document'),
    seed: Optional[int] = typer.Option(None, '--seed', help='Seed for random instances'),
    max_degree: Optional[int] = typer.Option(None, '--max-degree', help='Degree cap for random instances'),
    timing: bool = typer.Option(False, '--timing', help='Report wall-clock runtime'),
):
    state = _state(ctx)
    state.json_output = json_output
    state.timing = timing
    state.started = time.time()
    if seed is not None:
        state.seed = seed
    if max_degree is not None:
        state.max_degree = max_degree


@app.command('act')
def act_command(
    ctx: typer.Context,
    perm: str = typer.Option(..., '--perm', help='Permutation in cycle notation, e.g. "(1 2)(3)"'),
    poly: str = typer.Option(..., '--poly', help='Polynomial in the tensor-power variables'),
    base: str = typer.Option(DEFAULT_BASE, '--base', help='Base declaration header'),
    g: Optional[int] = typer.Option(None, '--g', help='Number of tensor factors'),
):
    g = g or max(Permutation.largest_point(perm), _largest_index(poly))
    tensor = TensorPowerContext(parse_context(base), g)
    sigma = Permutation.from_cycles(perm, g)
    p = parse_polynomial(poly, tensor.context)
    result = act(sigma, p)
    report = CommandReport(command='act', status='pass', details={
        'permutation': str(sigma), 'input': str(p), 'result': str(result),
    })
    _emit(ctx, report, [str(result)])


@app.command('reynolds')
def reynolds_command(
    ctx: typer.Context,
    poly: str = typer.Option(..., '--poly'),
    base: str = typer.Option(DEFAULT_BASE, '--base'),
    g: Optional[int] = typer.Option(None, '--g'),
):
    g = g or _largest_index(poly)
    tensor = TensorPowerContext(parse_context(base), g)
    p = parse_polynomial(poly, tensor.context)
    result = reynolds(p, g)
    invariant = is_invariant(result, g)
    report = CommandReport(
        command='reynolds',
        status='pass' if invariant else 'fail',
        witness=None if invariant else [str(result)],
        details={'input': str(p), 'result': str(result), 'invariant': invariant},
    )
    _emit(ctx, report, [str(result)])


@app.command('symfun')
def symfun_command(
    ctx: typer.Context,
    g: int = typer.Option(..., '--g'),
    kind: str = typer.Option('even', '--kind', help='even (s_h) or odd (vs_h)'),
    h: int = typer.Option(..., '--h'),
):
    if kind not in ('even', 'odd'):
        raise click.BadParameter("kind must be 'even' or 'odd'", param_hint='--kind')
    value = elementary_symmetric(g, h) if kind == 'even' else odd_symmetric(g, h)
    invariant = is_invariant(value, g)
    report = CommandReport(
        command='symfun',
        status='pass' if invariant else 'fail',
        witness=None if invariant else [str(value)],
        details={'g': g, 'kind': kind, 'h': h, 'result': str(value), 'invariant': invariant},
    )
    _emit(ctx, report, [str(value)])


@app.command('verify-lemma1')
def verify_lemma1_command(
    ctx: typer.Context,
    g: int = typer.Option(..., '--g'),
    d: int = typer.Option(..., '--d', help='Even degree truncation'),
    w: int = typer.Option(..., '--w', help='Odd degree truncation'),
):
    result = verify_lemma1(g, d, w)
    ok = result.injective and result.surjective
    broken = [
        f"block {list(b.block)}: invariants {b.invariant_dim}, image {b.image_dim}, generators {b.generator_count}"
        for b in result.blocks
        if b.invariant_dim != b.image_dim or b.image_dim != b.generator_count
    ]
    report = CommandReport(
        command='verify-lemma1',
        status='pass' if ok else 'fail',
        witness=None if ok else broken,
        dims=result.dims(),
        details=result.to_dict(),
    )
    lines = [
        f"dim_invariants: {result.dim_invariants}",
        f"dim_image: {result.dim_image}",
        f"injective: {str(result.injective).lower()}",
        f"surjective: {str(result.surjective).lower()}",
    ]
    _emit(ctx, report, lines)


@app.command('counterexample')
def counterexample_command(
    ctx: typer.Context,
    g: int = typer.Option(2, '--g'),
    d: int = typer.Option(0, '--d'),
    w: int = typer.Option(2, '--w'),
):
    try:
        found = counterexample_n2(g, d, w)
    except NotFoundError as e:
        report = CommandReport(command='counterexample', status='fail', witness=[str(e)])
        _emit(ctx, report, [])
        return
    report = CommandReport(
        command='counterexample',
        status='pass',
        witness=[str(found.witness)],
        dims=[(found.invariant_dim, found.image_dim)],
        details=found.to_dict(),
    )
    _emit(ctx, report, [
        str(found.witness),
        f"block: {list(found.block)}",
        f"invariant_dim: {found.invariant_dim}",
        f"image_dim: {found.image_dim}",
    ])


def _divisor_lines(divisor) -> List[str]:
    return [divisor_to_document(divisor).model_dump_json(), divisor.equation()]


@divisor_app.command('sum')
def divisor_sum_command(
    ctx: typer.Context,
    divisor: str = typer.Option(..., '--divisor'),
    other: str = typer.Option(..., '--other'),
):
    first, second = load_divisor(divisor), load_divisor(other)
    total = divisor_sum(first, second)
    report = CommandReport(command='divisor sum', status='pass', details={
        'divisor': divisor_to_document(total).model_dump(), 'equation': total.equation(),
    })
    _emit(ctx, report, _divisor_lines(total))


@divisor_app.command('reduce')
def divisor_reduce_command(ctx: typer.Context, divisor: str = typer.Option(..., '--divisor')):
    reduced = reduce(load_divisor(divisor)).defining_polynomial()
    report = CommandReport(command='divisor reduce', status='pass', details={'reduced': str(reduced)})
    _emit(ctx, report, [f"{reduced} = 0"])


@divisor_app.command('charpoly')
def divisor_charpoly_command(
    ctx: typer.Context,
    divisor: str = typer.Option(..., '--divisor'),
    multiplier: Optional[str] = typer.Option(None, '--multiplier', help='Even element of the ambient ring, default z'),
):
    loaded = load_divisor(divisor)
    presentation = QuotientPresentation(loaded)
    element = parse_polynomial(multiplier or loaded.coordinate, presentation.ambient)
    polynomial = char_poly(presentation, element)
    details = {'multiplier': str(element), 'char_poly': str(polynomial)}
    status, witness = 'pass', None
    if element == presentation.ambient.var(loaded.coordinate):
        expected = loaded.defining_polynomial()
        details['defining_polynomial'] = str(expected)
        if polynomial != expected:
            status, witness = 'fail', [str(polynomial), str(expected)]
    report = CommandReport(command='divisor charpoly', status=status, witness=witness, details=details)
    _emit(ctx, report, [str(polynomial)])


@divisor_app.command('pullback')
def divisor_pullback_command(
    ctx: typer.Context,
    divisor: str = typer.Option(..., '--divisor'),
    map_file: str = typer.Option(..., '--map', help='Morphism JSON file'),
):
    loaded = load_divisor(divisor)
    morphism = load_morphism(map_file, loaded.base)
    pulled = pullback(loaded, morphism)
    report = CommandReport(command='divisor pullback', status='pass', details={
        'divisor': divisor_to_document(pulled).model_dump(), 'equation': pulled.equation(),
    })
    _emit(ctx, report, _divisor_lines(pulled))


@app.command('universal')
def universal_command(ctx: typer.Context, g: int = typer.Option(..., '--g')):
    divisor = universal_divisor(g)
    report = CommandReport(command='universal', status='pass', details={
        'divisor': divisor_to_document(divisor).model_dump(), 'equation': divisor.equation(),
    })
    _emit(ctx, report, _divisor_lines(divisor))


@app.command('classify')
def classify_command(ctx: typer.Context, divisor: str = typer.Option(..., '--divisor')):
    morphism = classify(load_divisor(divisor))
    assignment = morphism.describe()
    report = CommandReport(command='classify', status='pass', details={'assignment': assignment})
    _emit(ctx, report, [f"{name} -> {image}" for name, image in assignment.items()])


@app.command('roundtrip')
def roundtrip_command(
    ctx: typer.Context,
    divisor: Optional[str] = typer.Option(None, '--divisor'),
    random_count: Optional[int] = typer.Option(None, '--random', help='Check this many seeded random instances'),
    max_g: int = typer.Option(3, '--max-g'),
):
    state = _state(ctx)
    if (divisor is None) == (random_count is None):
        raise click.UsageError('Give exactly one of --divisor or --random')
    if divisor is not None:
        loaded = load_divisor(divisor)
        ok = roundtrip_check(loaded)
        witness = None
        if not ok:
            rebuilt = pullback(universal_divisor(loaded.g), classify(loaded))
            witness = [str(loaded.defining_polynomial()), str(rebuilt.defining_polynomial())]
        report = CommandReport(command='roundtrip', status='pass' if ok else 'fail', witness=witness,
                               details={'equation': loaded.equation()})
        _emit(ctx, report, [loaded.equation(), f"roundtrip: {str(ok).lower()}"])
        return
    loader = RoundTripBatchLoader(seed=state.seed, max_degree=state.max_degree)
    stats = loader.load_all(random_count, max_g)
    ok = stats['instances_failed'] == 0
    report = CommandReport(
        command='roundtrip',
        status='pass' if ok else 'fail',
        witness=None if ok else [json.dumps(failure, sort_keys=True, default=str) for failure in loader.failures],
        details={'seed': state.seed, 'stats': stats},
    )
    _emit(ctx, report, [f"{key}: {value}" for key, value in stats.items()])


@app.command('susy-check')
def susy_check_command(
    ctx: typer.Context,
    unit: str = typer.Option('1', '--unit', help='Spin structure unit u, a nonzero rational'),
    g: int = typer.Option(2, '--g', help='Degree for the symmetric-product checks'),
):
    u = parse_unit(unit)
    if u == 0:
        raise ParseError('The unit of a spin structure must be nonzero')
    spin = spin_structure(u)
    diagonal = verify_theorem5(spin)
    universal = susy_universal_divisor(g, spin)
    expansion = susy_expansion(g, spin)
    sample = universal_divisor(g)
    roundtrip = susy_roundtrip(pullback(sample, _sample_point(g)), spin)
    ok = diagonal.matches and expansion and roundtrip
    witness = None
    if not ok:
        witness = [diagonal.pulled_back.equation(), diagonal.superdiagonal.equation()]
    report = CommandReport(command='susy-check', status='pass' if ok else 'fail', witness=witness, details={
        'superdiagonal': diagonal.to_dict(),
        'susy_universal': universal.equation(),
        'expansion': expansion,
        'roundtrip': roundtrip,
    })
    lines = [
        f"pulled back: {diagonal.pulled_back.equation()}",
        f"superdiagonal: {diagonal.superdiagonal.equation()}",
    ]
    if diagonal.rescaling:
        lines.append('rescaling: ' + ', '.join(f"{k} -> {v}" for k, v in diagonal.rescaling.items()))
    lines.append(f"susy universal: {universal.equation()}")
    _emit(ctx, report, lines)


def _sample_point(g: int) -> BaseMorphism:
    """s_i -> i, vs_i -> vs_i: a fixed non-universal divisor for the SUSY round trip"""
    base = universal_base(g)
    return BaseMorphism(base, base, {f"s{i}": base.constant(Fraction(i)) for i in range(1, g + 1)})


def run(argv: Optional[List[str]] = None, state: Optional[CliState] = None) -> int:
    """Dispatch argv; returns the exit code and leaves the report on state.report"""
    state = state if state is not None else CliState()
    command = typer.main.get_command(app)
    try:
        result = command.main(args=list(argv or []), prog_name='supersym', standalone_mode=False, obj=state)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return 2
    except SuperAlgebraError as e:
        logger.error(f"Command failed: {e}")
        state.report = CommandReport(command=' '.join(argv or []), status='error', details={'error': str(e)})
        if state.json_output:
            typer.echo(state.report.model_dump_json())
        else:
            typer.echo(f"error: {e}", err=True)
        return 2
    if isinstance(result, int) and result and state.report is None:
        return result
    if state.report is None:
        return 0
    return {'pass': 0, 'fail': 1}.get(state.report.status, 2)


def main():
    setup_logger()
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
