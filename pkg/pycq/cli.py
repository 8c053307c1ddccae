''' Batch front end: one subcommand per campaign, one JSON report per run.

    pycq classify --n 4 --size 6
    pycq extra-conn --n 5 --g 3 --workers 8
    pycq witness --n 7
    pycq diagnose --n 4 --g 3 --model pmc --mode bracket

Exit status: 0 success, 1 a claim was found false (violation, counterexample,
non-diagnosable), 2 the budget refused the computation, 3 usage error.
'''
import argparse
import logging
import sys
import time
from dataclasses import dataclass
from math import comb
from typing import Any, Dict, List, Optional

from .core import (VertexSet, DEFAULT_BUDGET, DEFAULT_PAIR_BUDGET, check_dimension,
                   default_workers, parse_label)
from .diagnosis import (DiagnosisModel, FaultPair, common_syndrome, distinguishable,
                        extra_diagnosability, is_g_extra_t_diagnosable, structured_witness)
from .enumeration import Checkpoint, colex_unrank
from .extremal import cq4_exceptional_cut, tightly_super_check, validate_bundle, witness_bundle
from .io import (export_dot, export_edge_list, export_json, vertex_set_record, write_report,
                 write_witness_csv)
from .lemmas import get_lemma
from .pycq_exceptions import BudgetError, PycqError, WitnessError
from .structure import (classify_lemma, enumerate_min_extra_cuts, extra_connectivity,
                        is_triangle_free, lemma_sweep, min_cut_profile_sweep, profile)
from .topology import Construction, CrossedCube, build_recursive, decompose
from .visual import plot_histogram

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_BUDGET = 2
EXIT_USAGE = 3

COMMANDS = ('gen', 'verify-topology', 'classify', 'extra-conn', 'min-cuts', 'witness',
            'diagnose')

# Parameters each command cannot run without.
REQUIRED_PARAMS = {
    'gen': ('n',),
    'verify-topology': ('n',),
    'classify': ('n',),
    'extra-conn': ('n', 'g'),
    'min-cuts': ('n', 'g', 'size'),
    'witness': ('n',),
    'diagnose': ('n', 'g'),
}

FORMATS = ('edges', 'dot', 'json')
LABELS = ('decimal', 'binary')
MODES = ('exhaustive', 'witness', 'bracket')

# Where results go, not what is computed; left out of checkpoint keys.
OUTPUT_PARAMS = ('plot', 'csv')


@dataclass
class Campaign:
    ''' A fully validated request for one batch computation.

    :param command: one of COMMANDS
    :param params: command parameters (n, g, size, t, model, mode, ...)
    :param output_path: where the report (or export) goes; '-' is stdout
    :param workers: worker processes for rank-range sweeps
    :param seed: seed of the syndrome adversary
    :param budget: maximum number of subsets (or pairs) a sweep may enumerate; by
        default DEFAULT_PAIR_BUDGET for diagnose and DEFAULT_BUDGET otherwise
    :param resume: checkpoint file to resume from and record into
    '''
    command: str
    params: Dict[str, Any]
    output_path: str = '-'
    workers: int = 1
    seed: int = 0
    budget: Optional[int] = None
    resume: Optional[str] = None
    progress: bool = False
    timestamp: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise PycqError(f"Unknown command '{self.command}', expected one of "
                            f"{', '.join(COMMANDS)}.")
        missing = [p for p in REQUIRED_PARAMS[self.command] if self.params.get(p) is None]
        if missing:
            raise PycqError(f"'{self.command}' needs {', '.join('--' + p for p in missing)}.")
        check_dimension(self.params['n'])
        for name in ('g', 'size', 't'):
            value = self.params.get(name)
            if value is not None and value < 0:
                raise PycqError(f"--{name} must be non-negative, given {value}.")
        if self.params.get('size') is not None and self.params['size'] > 1 << self.params['n']:
            raise PycqError(f"--size {self.params['size']} exceeds the {1 << self.params['n']} "
                            f"vertices of CQ_{self.params['n']}.")
        if self.workers < 1:
            raise PycqError(f"--workers must be positive, given {self.workers}.")
        if self.budget is None:
            self.budget = DEFAULT_PAIR_BUDGET if self.command == 'diagnose' else DEFAULT_BUDGET
        if self.budget < 0:
            raise PycqError(f"--budget must be non-negative, given {self.budget}.")
        if self.command == 'classify' and self.params.get('size') is None \
                and not self.params.get('faults'):
            raise PycqError("'classify' needs --size or --faults.")

    def checkpoint(self) -> Optional[Checkpoint]:
        if self.resume is None:
            return None
        key = {k: v for k, v in self.params.items() if k not in OUTPUT_PARAMS}
        return Checkpoint.load(self.resume, {'command': self.command, **key})


def _faults(n: int, spec: Optional[str]) -> VertexSet:
    if not spec:
        return VertexSet(n)
    labels = [s.strip() for s in spec.split(',') if s.strip()]
    for s in labels:
        if len(s) != n:
            raise PycqError(f"Faulty vertex '{s}' is not an {n}-bit label.")
    return VertexSet.from_labels(n, [parse_label(s) for s in labels])


def _pair_record(pair: FaultPair) -> Dict[str, Any]:
    return {'F1': vertex_set_record(pair.F1), 'F2': vertex_set_record(pair.F2),
            'size_F1': len(pair.F1), 'size_F2': len(pair.F2)}


def _gen(campaign: Campaign) -> int:
    n = campaign.params['n']
    construction = Construction(campaign.params.get('construction') or 'flat')
    cube = build_recursive(n) if construction is Construction.RECURSIVE else CrossedCube(n)
    faults = _faults(n, campaign.params.get('faults'))
    fmt = campaign.params.get('format') or 'edges'
    f = sys.stdout if campaign.output_path == '-' else open(campaign.output_path, 'w')
    try:
        if fmt == 'edges':
            export_edge_list(f, cube, binary=campaign.params.get('labels') == 'binary')
        elif fmt == 'dot':
            export_dot(f, cube, faults)
        else:
            export_json(f, cube)
    finally:
        if f is not sys.stdout:
            f.close()
    return EXIT_OK


def _verify_topology(campaign: Campaign) -> Dict[str, Any]:
    rows = []
    ok = True
    for n in range(1, campaign.params['n'] + 1):
        cube = CrossedCube(n)
        row = {'n': n}
        try:
            cube.verify()
            row['constructions_agree'] = True
        except WitnessError as e:
            logger.error("%s", e)
            row['constructions_agree'] = False
        row['edge_count'] = cube.edge_count()
        row['edge_count_expected'] = n * (1 << (n - 1))
        row['regular'] = all(len(cube.neighbor_list(u)) == n for u in range(cube.vertex_count))
        if n >= 2:
            try:
                decompose(cube)[2].validate(cube)
                row['cross_edges_perfect_matching'] = True
            except WitnessError as e:
                logger.error("%s", e)
                row['cross_edges_perfect_matching'] = False
        if n >= 3:
            row['triangle_free'] = is_triangle_free(cube)
        row_ok = (row['constructions_agree'] and row['regular']
                  and row['edge_count'] == row['edge_count_expected']
                  and row.get('cross_edges_perfect_matching', True))
        ok = ok and row_ok
        rows.append(row)
    return {'verified': ok, 'dimensions': rows}


def _classify(campaign: Campaign) -> Dict[str, Any]:
    n = campaign.params['n']
    cube = CrossedCube(n)
    lemma_id = campaign.params.get('lemma')
    if campaign.params.get('faults'):
        f = _faults(n, campaign.params['faults'])
        verdict = classify_lemma(cube, f, lemma_id)
        lemma = get_lemma(verdict.lemma_id)
        report = {'faults': vertex_set_record(f), 'lemma': verdict.lemma_id,
                  'profile': profile(cube, f).describe(),
                  'condition': verdict.condition_index, 'violation': verdict.is_violation}
        if not verdict.is_violation:
            report['condition_text'] = lemma.condition(verdict.condition_index).describe()
        return report
    size = campaign.params['size']
    sweep = lemma_sweep(cube, size, budget=campaign.budget, workers=campaign.workers,
                        lemma_id=lemma_id, checkpoint=campaign.checkpoint(),
                        progress=campaign.progress)
    faulty = [(rank, VertexSet(n, colex_unrank(rank, size)), desc)
              for rank, desc in sweep.violations]
    violations = [{'rank': rank, 'faults': f.to_binary(), 'profile': desc}
                  for rank, f, desc in faulty]
    if campaign.params.get('csv'):
        write_witness_csv(campaign.params['csv'], [(f, desc) for _, f, desc in faulty],
                          header=('F', 'profile'))
    if campaign.params.get('plot'):
        plot_histogram(sweep.condition_histogram, f"CQ_{n}, |F| = {size}: {sweep.lemma_id}",
                       display=False, filename=campaign.params['plot'])
    return {'n': n, 'size': size, 'lemma': sweep.lemma_id,
            'total_subsets': sweep.total_subsets,
            'condition_histogram': dict(sorted(sweep.condition_histogram.items())),
            'violation_count': sweep.violation_count, 'violations': violations,
            'violation': sweep.violation_count > 0}


def _extra_conn(campaign: Campaign) -> Dict[str, Any]:
    cube = CrossedCube(campaign.params['n'])
    result = extra_connectivity(cube, campaign.params['g'], budget=campaign.budget,
                                workers=campaign.workers, progress=campaign.progress)
    return {'value': result.value, 'witness': vertex_set_record(result.witness),
            'profile': result.profile.describe(), 'subsets_checked': result.subsets_checked}


def _min_cuts(campaign: Campaign) -> Dict[str, Any]:
    n, g, size = campaign.params['n'], campaign.params['g'], campaign.params['size']
    cube = CrossedCube(n)
    histogram = min_cut_profile_sweep(cube, g, size,
                                      budget=campaign.budget, workers=campaign.workers,
                                      checkpoint=campaign.checkpoint(),
                                      progress=campaign.progress)
    if campaign.params.get('csv'):
        cuts = enumerate_min_extra_cuts(cube, g, size, budget=campaign.budget)
        write_witness_csv(campaign.params['csv'], ((cut, prof.describe()) for cut, prof in cuts),
                          header=('cut', 'profile'))
    if campaign.params.get('plot'):
        plot_histogram(histogram, f"{g}-extra cuts of size {size} in CQ_{n}",
                       display=False, filename=campaign.params['plot'])
    return {'n': n, 'g': g, 'size': size, 'total_subsets': comb(cube.vertex_count, size),
            'cut_count': sum(histogram.values()), 'histogram': dict(sorted(histogram.items()))}


def _witness(campaign: Campaign) -> Dict[str, Any]:
    n = campaign.params['n']
    cube = CrossedCube(n)
    bundle = witness_bundle(n)
    pair = FaultPair(bundle.F1, bundle.F2, 3, DiagnosisModel.PMC)
    report = {'A': vertex_set_record(bundle.A), 'NA': vertex_set_record(bundle.NA),
              **_pair_record(pair)}
    validate_bundle(cube, bundle)
    report['indistinguishable'] = {m.value: not distinguishable(cube, bundle.F1, bundle.F2, m)
                                  for m in DiagnosisModel}
    if not all(report['indistinguishable'].values()):
        raise WitnessError(f"The witness pair of CQ_{n} is distinguishable.")
    if n == 4:
        cut, prof = cq4_exceptional_cut()
        report['cq4_exceptional_cut'] = {'cut': vertex_set_record(cut),
                                         'profile': prof.describe()}
    if campaign.params.get('tight'):
        check = tightly_super_check(cube)
        report['tightly_super'] = {
            'sets_checked': check.sets_checked, 'cut_size': check.cut_size,
            'minimum_neighborhood': check.minimum_neighborhood, 'tight': check.tight,
            'not_extra_cut': check.not_extra_cut,
            'violations': [[s.to_binary(), nb.to_binary()] for s, nb in check.violations],
        }
        report['violation'] = bool(check.violations)
    return report


def _diagnose(campaign: Campaign) -> Dict[str, Any]:
    n, g = campaign.params['n'], campaign.params['g']
    cube = CrossedCube(n)
    model = DiagnosisModel(campaign.params.get('model') or 'pmc')
    mode = campaign.params.get('mode') or 'bracket'
    t = campaign.params.get('t')
    kappa = campaign.params.get('extra_connectivity')
    report: Dict[str, Any] = {'model': model.value, 'mode': mode, 't': t}

    if mode == 'witness':
        pair = structured_witness(cube, g, model)
        report['witness'] = _pair_record(pair) if pair is not None else None
        if pair is not None:
            syndrome = common_syndrome(cube, pair.F1, pair.F2, model, campaign.seed)
            report['common_syndrome_ones'] = len(syndrome.ones())
        if t is not None and pair is not None:
            report['verdict'] = 'not-diagnosable' if pair.size <= t else 'undecided'
            report['violation'] = pair.size <= t
        return report

    if mode == 'exhaustive' and t is not None:
        verdict = is_g_extra_t_diagnosable(cube, g, t, model, budget=campaign.budget,
                                           workers=campaign.workers, progress=campaign.progress,
                                           extra_connectivity=kappa)
        report.update({'verdict': 'diagnosable' if verdict else 'not-diagnosable',
                       'method': verdict.method, 'pairs_checked': verdict.pairs_checked,
                       'witness': _pair_record(verdict.witness) if verdict.witness else None,
                       'violation': not verdict.diagnosable})
        return report

    bracket = extra_diagnosability(cube, g, model, budget=campaign.budget,
                                   workers=campaign.workers, progress=campaign.progress,
                                   exhaustive=(mode == 'exhaustive' or n <= 4),
                                   extra_connectivity=kappa)
    report.update({'lower': bracket.lower, 'upper': bracket.upper, 'exact': bracket.exact,
                   'value': bracket.value, 'method': bracket.method,
                   'pairs_checked': bracket.pairs_checked,
                   'witness': _pair_record(bracket.witness) if bracket.witness else None})
    if t is not None:
        if bracket.upper is not None and t > bracket.upper:
            report['verdict'] = 'not-diagnosable'
        elif t <= bracket.lower:
            report['verdict'] = 'diagnosable'
        else:
            report['verdict'] = 'undecided'
        report['violation'] = report['verdict'] == 'not-diagnosable'
    if mode == 'exhaustive' and not bracket.exact:
        raise BudgetError(f"t~_{g}(CQ_{n}) under {model.value} is only bracketed in "
                          f"[{bracket.lower}, {bracket.upper}] within the budget.",
                          lower=bracket.lower, upper=bracket.upper)
    return report


_RUNNERS = {
    'verify-topology': _verify_topology,
    'classify': _classify,
    'extra-conn': _extra_conn,
    'min-cuts': _min_cuts,
    'witness': _witness,
    'diagnose': _diagnose,
}


def run(campaign: Campaign) -> int:
    ''' Run a campaign, write its report, and return the exit status.

    The report always carries the command and its parameters. A budget refusal
    still writes a report, holding the bracket the refusal established.
    '''
    if campaign.command == 'gen':
        return _gen(campaign)

    report: Dict[str, Any] = {'command': campaign.command, 'params': dict(campaign.params),
                              'seed': campaign.seed, 'budget': campaign.budget}
    started = time.perf_counter()
    status = EXIT_OK
    try:
        result = _RUNNERS[campaign.command](campaign)
        report['status'] = 'ok'
        report['result'] = result
        if result.get('violation') or result.get('verified') is False:
            status = EXIT_FALSE
    except BudgetError as e:
        logger.warning("%s", e)
        report['status'] = 'budget'
        report['message'] = str(e)
        report['bracket'] = {'lower': e.lower, 'upper': e.upper, 'required': e.required}
        status = EXIT_BUDGET
    except WitnessError as e:
        logger.error("%s", e)
        report['status'] = 'contradiction'
        report['message'] = str(e)
        status = EXIT_FALSE
    if campaign.timestamp:
        report['runtime'] = round(time.perf_counter() - started, 3)
    write_report(campaign.output_path, report, timestamp=campaign.timestamp)
    return status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise PycqError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='pycq', description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='count', default=0,
                           help="more logging (-v info, -vv debug)")
    verbosity.add_argument('-q', '--quiet', action='store_true', help="only log errors")
    subparsers = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    def add(name, help_text, extra=()):
        p = subparsers.add_parser(name, help=help_text)
        p.add_argument('--n', type=int, required=True, help="dimension of CQ_n")
        p.add_argument('--out', default='-', help="output file ('-' for stdout)")
        p.add_argument('--workers', type=int, default=None,
                       help="worker processes (default: $PYCQ_WORKERS or the CPU count)")
        p.add_argument('--budget', type=int, default=None,
                       help=f"maximum subsets (default {DEFAULT_BUDGET:.0e}) or, for "
                            f"diagnose, pairs (default {DEFAULT_PAIR_BUDGET:.0e}) to enumerate")
        p.add_argument('--seed', type=int, default=0, help="adversary seed")
        p.add_argument('--resume', default=None, metavar='CHECKPOINT',
                       help="checkpoint file to resume from and record into")
        p.add_argument('--timestamp', action='store_true',
                       help="add timestamp and runtime to the report")
        for flag in extra:
            flag(p)
        return p

    def g(p):
        p.add_argument('--g', type=int, default=None, help="extra-ness g")

    def size(p):
        p.add_argument('--size', type=int, default=None, help="fault set size")

    def plot(p):
        p.add_argument('--plot', default=None, metavar='PNG',
                       help="also save a bar chart of the histogram")

    def csv(p):
        p.add_argument('--csv', default=None, metavar='CSV',
                       help="also write the violating fault sets or the cuts as CSV")

    def faults(p):
        p.add_argument('--faults', default=None,
                       help="comma separated binary labels, e.g. 0100,0111")

    add('gen', "export the topology", [faults, lambda p: p.add_argument(
        '--format', choices=FORMATS, default='edges'), lambda p: p.add_argument(
        '--construction', choices=[c.value for c in Construction], default='flat'),
        lambda p: p.add_argument('--labels', choices=LABELS, default='decimal',
                                 help="vertex labels of the edge list")])
    add('verify-topology', "cross-check both constructions for dimensions 1..n")
    add('classify', "classify fault sets against the component-structure results",
        [size, faults, plot, csv, lambda p: p.add_argument('--lemma', default=None,
                                                 help="force a specific result by id")])
    add('extra-conn', "exact g-extra connectivity", [g])
    add('min-cuts', "profile histogram of all g-extra cuts of a given size", [g, size, plot, csv])
    add('witness', "the 3-path witness bundle and its checks",
        [lambda p: p.add_argument('--tight', action='store_true',
                                  help="also check every connected 4-set")])
    add('diagnose', "g-extra diagnosability", [g, lambda p: p.add_argument(
        '--t', type=int, default=None, help="fault bound t"), lambda p: p.add_argument(
        '--model', choices=[m.value for m in DiagnosisModel], default='pmc'),
        lambda p: p.add_argument('--mode', choices=MODES, default='bracket'),
        lambda p: p.add_argument('--extra-connectivity', type=int, default=None,
                                 help="known g-extra connectivity, sharpens the PMC bound")])
    return parser


_CAMPAIGN_FIELDS = {'command', 'out', 'workers', 'budget', 'seed', 'resume', 'timestamp',
                    'verbose', 'quiet'}


def campaign_from_args(args: argparse.Namespace, progress: bool = False) -> Campaign:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _CAMPAIGN_FIELDS}
    workers = args.workers if args.workers is not None else default_workers()
    return Campaign(args.command, params, output_path=args.out, workers=workers,
                    seed=args.seed, budget=args.budget, resume=args.resume,
                    progress=progress, timestamp=args.timestamp)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except PycqError as e:
        print(f"pycq: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.quiet:
        level = logging.ERROR
    else:
        level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format='%(asctime)s %(name)s %(levelname)s: %(message)s')
    try:
        campaign = campaign_from_args(args, progress=sys.stderr.isatty() and not args.quiet)
        return run(campaign)
    except PycqError as e:
        print(f"pycq: error: {e}", file=sys.stderr)
        return EXIT_USAGE
