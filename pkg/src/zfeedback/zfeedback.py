#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import argparse
import logging
import os
from pathlib import Path
import sys
from typing import List, Optional, Tuple

import yaml

if __name__ == '__main__':
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from zfeedback import __version__, APP_NAME
from zfeedback.DataClasses import CodeParams, FeasibilityLimitError, Limits, MessageIndex, ParameterError, RateCurve
from zfeedback.Decoder import Decoder
from zfeedback.Encoder import select_params
from zfeedback.zf_bounds import curve_to_csv, emit_curve
from zfeedback.zf_channel import Adversary, greedy_adversary, no_adversary, path_count, random_adversary, \
    run_session, verify_exhaustive
from zfeedback.zf_gv import render_trace, trace_graph
from zfeedback.zf_helper import make_grid, open_file_read, open_file_write, split_grid, tuplelist2csv
from zfeedback.zf_oracle import oracle_table, outputs_disjoint

logger = logging.getLogger(__name__)

ADVERSARIES = ('none', 'greedy', 'random', 'exhaustive')
BUILTIN_SWEEP = Path(__file__).parent / 'sweep.yml'
MAX_VERIFY_N = 16

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def parse_sweep(yaml_input: str) -> Tuple[Limits, List[Tuple[str, CodeParams]]]:
    """Parse a verification sweep: an optional limits mapping and a list of instances."""
    yaml_data = yaml.safe_load(yaml_input) or {}
    limits = Limits(**(yaml_data.get('limits') or {}))
    instances = []
    for i, attribs in enumerate(yaml_data.get('instances') or [], 1):
        if not isinstance(attribs, dict):
            raise ParameterError(f'Sweep instance {i} is not a mapping')
        attribs = dict(attribs)
        name = str(attribs.pop('name', f'instance{i}'))
        instances.append((name, CodeParams(**attribs)))
    return limits, instances


def make_adversary(name: str, seed: int = 0) -> Adversary:
    if name == 'none':
        return no_adversary()
    if name == 'greedy':
        return greedy_adversary()
    if name == 'random':
        return random_adversary(seed)
    raise ParameterError(f'Unknown adversary {name!r}')


def write_output(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open_file_write(out_path) as file:
            file.write(text)
    else:
        sys.stdout.write(text)


def cmd_bounds(grid_start: float, grid_end: float, grid_step: float, out_path: Optional[str] = None) -> RateCurve:
    curve = emit_curve(make_grid(grid_start, grid_end, grid_step))
    write_output(curve_to_csv(curve), out_path)
    return curve


def cmd_simulate(tau: float, delta: int, k: int, message: MessageIndex, adversary: str, seed: int = 0,
                 limits: Optional[Limits] = None) -> bool:
    params = select_params(tau, delta, k)
    print(params.summary())
    if not 0 <= message < params.M:
        raise ParameterError(f'Message {message} outside [0, {params.M})')
    if adversary == 'exhaustive':
        ok = verify_exhaustive(params, message, limits=limits)
        print(f'exhaustive: at most {path_count(params)} adversary paths')
    else:
        decoded, transcript = run_session(params, message, make_adversary(adversary, seed))
        print(transcript.to_text(), end='')
        print(f'decoded={decoded}')
        ok = decoded == message
    print('PASS' if ok else 'FAIL')
    return ok


def cmd_verify(max_n: int, sweep_path: Optional[str] = None) -> bool:
    """Check every sweep instance with n <= max_n for every message; True iff all pass."""
    if not 0 <= max_n <= MAX_VERIFY_N:
        raise ParameterError(f'max_n={max_n} must lie in [0, {MAX_VERIFY_N}]')
    with open_file_read(sweep_path or BUILTIN_SWEEP) as file:
        limits, instances = parse_sweep(file.read())
    selected = [(name, params) for name, params in instances if params.n <= max_n]
    passed = 0
    for name, params in selected:
        logger.info('verifying %s: %s', name, params.summary())
        ok = all(verify_exhaustive(params, m, limits=limits) for m in range(params.M))
        if ok and params.n <= limits.max_enumerate_n:
            ok = outputs_disjoint(params, limits)
        passed += ok
        print(f'{name}: n={params.n} t={params.t} M={params.M} {"PASS" if ok else "FAIL"}')
    print(f'{passed}/{len(selected)} instances passed')
    return passed == len(selected)


def cmd_oracle(max_n: int, max_t: int, out_path: Optional[str] = None) -> List[Tuple[int, int, int, float]]:
    rows = oracle_table(max_n, max_t)
    write_output(tuplelist2csv(rows, header=('n', 't', 'M', 'asymptotic')), out_path)
    return rows


def cmd_trace(tau: float, delta: int, k: int, message: MessageIndex, adversary: str, seed: int,
              out_path: str) -> MessageIndex:
    """Run one session and write its transcript and a diagram of the partitioning steps."""
    if adversary == 'exhaustive':
        raise ParameterError('trace needs a single session adversary, not exhaustive')
    params = select_params(tau, delta, k)
    if not 0 <= message < params.M:
        raise ParameterError(f'Message {message} outside [0, {params.M})')
    _, transcript = run_session(params, message, make_adversary(adversary, seed))
    decoder = Decoder(params)
    for record in transcript:
        decoder.observe(record.received)
    decoded = decoder.finish()
    with open_file_write(f'{out_path}.transcript.csv') as file:
        file.write(transcript.to_text())
    render_trace(trace_graph(decoder, decoded), out_path)
    print(f'{params.summary()}\ndecoded={decoded}')
    return decoded


def parse_cmdline(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog='zfeedback',
        description='Error-free feedback coding over the adversarial Z-channel',
    )
    parser.add_argument('-V', '--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='count', default=0, help='more log output, repeat for debug')
    commands = parser.add_subparsers(dest='command', required=True)

    bounds = commands.add_parser('bounds', help='write lower and upper rate bounds as CSV')
    bounds.add_argument('--grid', type=str, default='0.05:0.95:0.05', metavar='START:END:STEP')
    bounds.add_argument('--out', type=str, metavar='PATH')

    def add_session_arguments(sub):
        sub.add_argument('--tau', type=float, required=True)
        sub.add_argument('--delta', type=int, required=True)
        sub.add_argument('--k', type=int, required=True)
        sub.add_argument('--message', type=int, default=0)
        sub.add_argument('--adversary', choices=ADVERSARIES, default='none')
        sub.add_argument('--seed', type=int, default=0)

    simulate = commands.add_parser('simulate', help='run one session and print its transcript')
    add_session_arguments(simulate)

    verify = commands.add_parser('verify', help='exhaustively verify the built-in parameter sweep')
    verify.add_argument('--max-n', type=int, default=14)
    verify.add_argument('--sweep', type=str, metavar='YAML_FILE')

    oracle = commands.add_parser('oracle', help='write exact M(n, t) for small n as CSV')
    oracle.add_argument('--max-n', type=int, default=8)
    oracle.add_argument('--max-t', type=int, default=3)
    oracle.add_argument('--out', type=str, metavar='PATH')

    trace = commands.add_parser('trace', help='write a transcript and Graphviz diagram of one session')
    add_session_arguments(trace)
    trace.add_argument('--out', type=str, required=True, metavar='PATH')

    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:

    args = parse_cmdline(argv)
    logging.basicConfig(level=max(logging.DEBUG, logging.WARNING - 10 * args.verbose),
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        if args.command == 'bounds':
            cmd_bounds(*split_grid(args.grid), out_path=args.out)
            ok = True
        elif args.command == 'simulate':
            ok = cmd_simulate(args.tau, args.delta, args.k, args.message, args.adversary, args.seed)
        elif args.command == 'verify':
            ok = cmd_verify(args.max_n, args.sweep)
        elif args.command == 'oracle':
            if args.max_n < 0 or args.max_t < 0:
                raise ParameterError('--max-n and --max-t must not be negative')
            cmd_oracle(args.max_n, args.max_t, args.out)
            ok = True
        else:
            cmd_trace(args.tau, args.delta, args.k, args.message, args.adversary, args.seed, args.out)
            ok = True
    except (ParameterError, FeasibilityLimitError) as error:
        print(f'{APP_NAME} error: {error}', file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
