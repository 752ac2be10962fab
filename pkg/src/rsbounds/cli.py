"""Command-line front end.

Every subcommand prints a JSON document to stdout (and optionally writes
files under the configured output directory).  The embedded run
configuration plus fixed random seeds make outputs byte-identical across
runs apart from the generated_at timestamp.  Exit status 0 means every
certification or check in the invocation passed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .config import RunConfig
from .dyadic import DyadicPoint
from .norms import Enclosure, f2_dyadic, f_dyadic, g_dyadic
from .sequence import Segment, coeff_range
from .evaluate import eval_grid, eval_point

SCHEMA_VERSION = 1


def _payload(cfg: RunConfig, command: str, result: dict) -> dict:
    return {
        'schema_version': SCHEMA_VERSION,
        'tool_version': __version__,
        'generated_at': time.strftime('%Y-%m-%dT%H:%M:%SZ', time.gmtime()),
        'config': cfg.to_dict(),
        'command': command,
        'result': result,
    }


def _emit(cfg: RunConfig, command: str, result: dict, ok: bool,
          out_name: str | None = None) -> int:
    doc = _payload(cfg, command, result)
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if out_name:
        os.makedirs(cfg.out_dir, exist_ok=True)
        with open(os.path.join(cfg.out_dir, out_name), 'w') as fh:
            fh.write(text + '\n')
    return 0 if ok else 1


def _enc_dict(enc: Enclosure) -> dict:
    return {'lo': enc.lo, 'hi': enc.hi, 'width': enc.width}


def _cmd_coeffs(cfg: RunConfig, args) -> int:
    signs = coeff_range(Segment(args.m, args.n))
    print(' '.join('+' if s > 0 else '-' for s in signs))
    return 0


def _cmd_eval(cfg: RunConfig, args) -> int:
    seg = Segment(args.m, args.n)
    if args.grid:
        vals = eval_grid(seg, cfg.N).values
        j = np.argmax(np.abs(vals))
        result = {
            'grid_log2': cfg.grid_log2,
            'max_abs': float(np.abs(vals[j])),
            'argmax_index': int(j),
        }
        return _emit(cfg, 'eval', result, True)
    re, im = (float(t) for t in args.z.split(','))
    val = eval_point(seg, complex(re, im))
    return _emit(cfg, 'eval', {'value': [val.real, val.imag]}, True)


def _cmd_f(cfg: RunConfig, args) -> int:
    x = DyadicPoint.parse(args.x)
    enc = f_dyadic(x, cfg.N)
    return _emit(cfg, 'f', {'x': float(x), 'enclosure': _enc_dict(enc)}, True)


def _cmd_f2(cfg: RunConfig, args) -> int:
    x, y = DyadicPoint.parse(args.x), DyadicPoint.parse(args.y)
    enc = f2_dyadic(x, y, cfg.N)
    return _emit(cfg, 'f2', {'x': float(x), 'y': float(y),
                             'enclosure': _enc_dict(enc)}, True)


def _cmd_g(cfg: RunConfig, args) -> int:
    x, y = DyadicPoint.parse(args.x), DyadicPoint.parse(args.y)
    enc = g_dyadic(x, y, cfg.N)
    return _emit(cfg, 'g', {'x': float(x), 'y': float(y),
                            'enclosure': _enc_dict(enc)}, True)


def _cmd_certify_f(cfg: RunConfig, args) -> int:
    from .certify1d import builtin_centers, certify_cover, load_centers

    if args.table.startswith('builtin:'):
        centers = builtin_centers(int(args.table.split(':', 1)[1]))
    else:
        with open(args.table) as fh:
            centers = load_centers(fh)
    a = DyadicPoint.parse(args.interval[0]).fraction
    b = DyadicPoint.parse(args.interval[1]).fraction
    report = certify_cover((a, b), args.target, centers, cfg.N)
    return _emit(cfg, 'certify-f', report.to_dict(), report.covered,
                 out_name='certify_f.json')


def _cmd_certify_g(cfg: RunConfig, args) -> int:
    from .certify2d import (DyadicSquare, certify_g_full, certify_square_g,
                            check_exclusion_region)

    threads = cfg.effective_threads()
    if args.square:
        r, s, k = args.square
        tree = certify_square_g(DyadicSquare(r, s, k), cfg.N, cfg.max_scale,
                                threads)
    else:
        tree = certify_g_full(cfg.N, cfg.max_scale, threads)
    ok, violations = check_exclusion_region(tree)
    result = json.loads(tree.to_json())
    result['exclusion_ok'] = ok
    result['violations'] = [v.to_dict() for v in violations]
    os.makedirs(cfg.out_dir, exist_ok=True)
    with open(os.path.join(cfg.out_dir, 'certify_g_squares.csv'), 'w') as fh:
        fh.write(_config_comment(cfg) + '\n')
        fh.write(tree.to_csv())
    return _emit(cfg, 'certify-g', result, ok, out_name='certify_g.json')


def _cmd_certify_f2(cfg: RunConfig, args) -> int:
    from .certify2d import certify_f2

    tree, ok = certify_f2(cfg.N, cfg.max_scale, cfg.effective_threads())
    result = json.loads(tree.to_json())
    result['ok'] = ok
    os.makedirs(cfg.out_dir, exist_ok=True)
    with open(os.path.join(cfg.out_dir, 'certify_f2_squares.csv'), 'w') as fh:
        fh.write(_config_comment(cfg) + '\n')
        fh.write(tree.to_csv())
    return _emit(cfg, 'certify-f2', result, ok, out_name='certify_f2.json')


def _cmd_extremal(cfg: RunConfig, args) -> int:
    from .experiments import ExtremalPair, extremal_values

    pair = ExtremalPair(args.k)
    at_one, at_minus_one = extremal_values(args.k)
    result = {'k': args.k, 'm': pair.m, 'n': pair.n,
              'value_at_one': at_one, 'value_at_minus_one': at_minus_one,
              'invariants_ok': pair.check_invariants()}
    return _emit(cfg, 'extremal', result, result['invariants_ok'])


def _cmd_montgomery(cfg: RunConfig, args) -> int:
    from .experiments import montgomery_counterexample

    grid_N = cfg.N if 4 ** args.k * 4 <= cfg.N else None
    rep = montgomery_counterexample(args.k, grid_N)
    result = {'k': rep.k, 'point_ratio': rep.point_ratio,
              'limit': rep.limit, 'exceeds_nine': rep.exceeds_nine,
              'grid_sup_ratio_hi': rep.grid_sup_ratio,
              'grid_sup_ratio_lo': rep.grid_sup_ratio_lo, 'grid_N': rep.N}
    _write_csv(cfg, f'montgomery_{args.k}.csv', ['k', 'ratio', 'target'],
               [[rep.k, rep.point_ratio, rep.limit]])
    return _emit(cfg, 'montgomery', result, True)


def _cmd_dense(cfg: RunConfig, args) -> int:
    from .experiments import dense_limit_empirical

    rows = dense_limit_empirical(args.m, args.n, args.kmax)
    target = rows[0].target
    hard_ok = all(r.ratio.lo <= target.hi + 1e-9 for r in rows)
    result = {
        'm': args.m, 'n': args.n,
        'target': _enc_dict(target),
        'rows': [{'k': r.k, 'ratio_lo': r.ratio.lo, 'ratio_hi': r.ratio.hi}
                 for r in rows],
        'hard_ok': hard_ok,
    }
    _write_csv(cfg, f'dense_{args.m}_{args.n}.csv',
               ['k', 'ratio_lo', 'ratio_hi', 'target_lo', 'target_hi'],
               [[r.k, r.ratio.lo, r.ratio.hi, target.lo, target.hi]
                for r in rows])
    return _emit(cfg, 'dense', result, hard_ok)


def _config_comment(cfg: RunConfig) -> str:
    return '# config: ' + json.dumps(cfg.to_dict(), sort_keys=True)


def _write_csv(cfg: RunConfig, name: str, header: list, rows: list) -> None:
    import csv

    os.makedirs(cfg.out_dir, exist_ok=True)
    with open(os.path.join(cfg.out_dir, name), 'w', newline='') as fh:
        fh.write(_config_comment(cfg) + '\n')
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _cmd_figures(cfg: RunConfig, args) -> int:
    from .certify2d import certify_g_full

    # f-curve over [1, 2] on a dyadic lattice of step 2^-8.
    rows = []
    for u in range(256, 513):
        x = DyadicPoint(u, 8)
        enc = f_dyadic(x, min(cfg.N, 1 << 20))
        rows.append([float(x), enc.lo, enc.hi])
    _write_csv(cfg, 'figure_f_curve.csv', ['x', 'f_lo', 'f_hi'], rows)
    tree = certify_g_full(cfg.N, cfg.max_scale, cfg.effective_threads())
    os.makedirs(cfg.out_dir, exist_ok=True)
    with open(os.path.join(cfg.out_dir, 'figure_g_squares.csv'), 'w') as fh:
        fh.write(_config_comment(cfg) + '\n')
        fh.write(tree.to_csv())
    result = {'f_curve_points': len(rows),
              'g_squares': len(tree.records),
              'files': ['figure_f_curve.csv', 'figure_g_squares.csv']}
    return _emit(cfg, 'figures', result, True)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog='rsbounds',
        description='Certified bounds for Rudin-Shapiro partial sums')
    ap.add_argument('--grid-log2', type=int, default=None,
                    help='log2 of the evaluation grid (default 20)')
    ap.add_argument('--max-scale', type=int, default=None,
                    help='deepest dyadic subdivision scale (default 6)')
    ap.add_argument('--out-dir', default=None,
                    help=f'output directory (env {"RSBOUNDS_OUT_DIR"})')
    ap.add_argument('--seed', type=int, default=None)
    ap.add_argument('--threads', type=int, default=None,
                    help='0 = auto (env RSBOUNDS_THREADS)')
    sub = ap.add_subparsers(dest='cmd', required=True)

    p = sub.add_parser('coeffs', help='print signs a_m .. a_{n-1}')
    p.add_argument('m', type=int)
    p.add_argument('n', type=int)
    p.set_defaults(fn=_cmd_coeffs)

    p = sub.add_parser('eval', help='evaluate a partial sum')
    p.add_argument('m', type=int)
    p.add_argument('n', type=int)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument('--z', help='point as re,im on the unit circle')
    g.add_argument('--grid', action='store_true',
                   help='batch evaluate on the configured grid')
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser('f', help='enclosure of f at a binary dyadic point')
    p.add_argument('x', help="binary dyadic string, e.g. '1.011'")
    p.set_defaults(fn=_cmd_f)

    p = sub.add_parser('f2', help='enclosure of f(x, y)')
    p.add_argument('x')
    p.add_argument('y')
    p.set_defaults(fn=_cmd_f2)

    p = sub.add_parser('g', help='enclosure of g(x, y)')
    p.add_argument('x')
    p.add_argument('y')
    p.set_defaults(fn=_cmd_g)

    p = sub.add_parser('certify-f', help='interval coverage certification')
    p.add_argument('--table', default='builtin:1',
                   help="center list path or 'builtin:1' / 'builtin:2'")
    p.add_argument('--target', type=float, required=True)
    p.add_argument('--interval', nargs=2, required=True,
                   metavar=('A', 'B'),
                   help='endpoints, binary dyadic or exact fractions')
    p.set_defaults(fn=_cmd_certify_f)

    p = sub.add_parser('certify-g', help='dyadic-square bound on g')
    p.add_argument('--square', nargs=3, type=int, metavar=('R', 'S', 'K'),
                   help='restrict to one dyadic square (default [0,4]^2)')
    p.set_defaults(fn=_cmd_certify_g)

    p = sub.add_parser('certify-f2', help='dyadic-square bound on f(x, y)')
    p.set_defaults(fn=_cmd_certify_f2)

    p = sub.add_parser('extremal', help='exact critical-pair values')
    p.add_argument('--k', type=int, required=True)
    p.set_defaults(fn=_cmd_extremal)

    p = sub.add_parser('montgomery', help='critical tail ratio report')
    p.add_argument('--k', type=int, required=True)
    p.set_defaults(fn=_cmd_montgomery)

    p = sub.add_parser('dense', help='sup-to-L norm ratio sequence')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--kmax', type=int, default=8)
    p.set_defaults(fn=_cmd_dense)

    p = sub.add_parser('figures', help='emit plot CSVs')
    p.set_defaults(fn=_cmd_figures)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {}
    for name in ('grid_log2', 'max_scale', 'out_dir', 'seed', 'threads'):
        val = getattr(args, name, None)
        if val is not None:
            overrides[name] = val
    try:
        cfg = RunConfig(**overrides)
        return args.fn(cfg, args)
    except (ValueError, OSError) as exc:
        print(json.dumps({'error': str(exc), 'schema_version': SCHEMA_VERSION}),
              file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
