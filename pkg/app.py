"""
Star point toolkit - command-line entry point
Star points, configuration spaces and component tables of smooth projective
hypersurfaces, computed exactly over cyclotomic fields
"""

import argparse
import logging
import sys
import time

from config import Config
from exceptions import INTERNAL_ERRORS, SingularPoint, StarPointError
from models import ComponentKind
from services import builders, dimensions
from services.classify_service import classify_service
from services.configspace_service import config_space_service
from services.fields import CycloField
from services.geometry_service import geometry_service
from services.parser import (
    format_line, format_x_file, parse_config, parse_line, parse_plane, parse_point, parse_x_file,
)
from services.report_service import report_service
from services.selftest_service import run_selftest
from services.starpoint_service import star_point_service

# Configure logging
logging.basicConfig(
    level=getattr(logging, Config.LOG_LEVEL, logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.FileHandler(Config.LOG_FILE),
        logging.StreamHandler(sys.stderr)
    ]
)

logger = logging.getLogger(__name__)


def _read(path):
    with open(path, encoding='utf-8') as handle:
        return handle.read()


def _load_surface(args):
    surface, _ = parse_x_file(_read(args.x_file), conductor=args.field)
    return surface


def _load_config(args, strict=True):
    config, _ = parse_config(_read(args.config_file), conductor=args.field, strict=strict)
    return config


def _star_rows(surface, points):
    rows = []
    for point in points:
        try:
            rows.append(star_point_service.is_star_point(surface, point).to_dict())
        except SingularPoint:
            rows.append({'point': str(point), 'is_star': None, 'singular': True})
    return rows


# star

def cmd_star_check(args):
    surface = _load_surface(args)
    point = parse_point(args.point, surface.field, surface.ambient_dim + 1)
    verdict = star_point_service.is_star_point(surface, point)
    return verdict.to_dict(), []


def cmd_star_line(args):
    surface = _load_surface(args)
    size = surface.ambient_dim + 1
    line = parse_line(args.line, surface.field, size)
    candidates = [parse_point(p, surface.field, size) for p in args.candidate or []]
    return star_point_service.star_points_on_line(surface, line, candidates).to_dict(), []


def cmd_star_polar(args):
    surface = _load_surface(args)
    point = parse_point(args.point, surface.field, surface.ambient_dim + 1)
    polar = star_point_service.polar_hypersurface(surface, point)
    return {'point': str(point), 'polar': str(polar.equation)}, [polar.equation]


def cmd_star_polar_check(args):
    surface = _load_surface(args)
    point = parse_point(args.point, surface.field, surface.ambient_dim + 1)
    by_definition = star_point_service.is_star_point(surface, point).is_star
    by_polar = star_point_service.star_via_polar(surface, point)
    return {
        'point': str(point),
        'is_star': by_definition,
        'polar_contains_tangent': by_polar,
        'agree': by_definition == by_polar,
    }, []


def cmd_star_forced(args):
    surface = _load_surface(args)
    size = surface.ambient_dim + 1
    line = parse_line(args.line, surface.field, size)
    known = [parse_point(p, surface.field, size) for p in args.known]
    point, verdict = star_point_service.forced_dth_star(surface, line, known)
    return {'forced': str(point), 'line': format_line(line), 'verdict': verdict.to_dict()}, []


# fermat and components

def cmd_fermat(args):
    surface, points = builders.build_fermat(args.d, args.N)
    rows = _star_rows(surface, points)
    return {
        'count': len(points),
        'expected': dimensions.fermat_star_count(args.N, args.d),
        'star_points': rows,
    }, [surface.equation]


def cmd_components(args):
    rows = classify_service.component_table(args.d, args.N)
    expected = sum(r.is_expected for r in rows)
    return {
        'components': [r.to_dict() for r in rows],
        'count': len(rows),
        'expected_dimension_count': expected,
        'expected_count_formula': dimensions.expected_component_count(args.N, args.d),
    }, []


# config

def cmd_config_dim(args):
    config = _load_config(args)
    return {'configuration': config.to_dict(), 'dim': config_space_service.dim_report(config).to_dict()}, []


def cmd_config_suited(args):
    config = _load_config(args)
    report = config_space_service.is_suited(config, seed=args.seed)
    witnesses = [report.witness] if report.witness is not None else []
    return report.to_dict(), witnesses


def cmd_config_restrict(args):
    config = _load_config(args)
    plane = parse_plane(args.plane, config.field, config.ambient_dim + 1)
    return config_space_service.restriction_dim(config, plane).to_dict(), []


def cmd_config_extend(args):
    config = _load_config(args)
    size = config.ambient_dim + 1
    plane = parse_plane(args.plane, config.field, size)
    point = parse_point(args.point, config.field, size)
    space = config_space_service.extend_candidates(config, plane, point)
    return space.to_dict(), space.ambient_basis


# classify

def cmd_classify3(args):
    config = _load_config(args, strict=not args.nonstrict)
    label = classify_service.classify_three(config)
    verdicts = {'label': label.to_dict(), 'configuration': config.to_dict()}
    if label.kind is ComponentKind.NOT_SUITED and config.general_position:
        verdicts['case3'] = classify_service.case3_check(config)
    return verdicts, []


def cmd_classify2(args):
    config = _load_config(args)
    label = classify_service.classify_two(config)
    verdicts = {'label': label.to_dict(), 'configuration': config.to_dict()}
    witnesses = []
    if label.kind is not ComponentKind.NOT_SUITED:
        form = classify_service.normal_form_two(config)
        verdicts['normal_form'] = form.to_dict()
        witnesses.append(form.transformed)
    return verdicts, witnesses


# build

def _round_trip(surface, points, strict=True):
    """Triples at the designated points and their component label"""
    triples = config_space_service.triples_from_hypersurface(surface, points, strict)
    config = config_space_service.make_configuration(triples)
    return classify_service.classify_three(config).to_dict()


def cmd_build(args):
    family = args.family
    if family == 'fermat':
        surface, points = builders.build_fermat(args.d, args.N)
        verdicts = {'count': len(points)}
    elif family == 'collinear':
        line, points, planes, cone = builders.collinear_fixture(args.d, args.N)
        surface = builders.build_collinear(args.d, args.N, line, points, planes, cone, seed=args.seed)
        verdicts = {'line': str(line)}
    elif family == 'case1':
        field = CycloField(args.order)
        t = field.zeta(args.order, args.power)
        surface = builders.build_case1(args.d, args.N, t, degenerate=args.degenerate, seed=args.seed)
        points = builders.case1_points(field, args.N, t)
        verdicts = {'t': str(t)}
        if args.degenerate:
            verdicts['multiplicity_at_e2'] = builders.degenerate_certificate(surface)
            return dict(verdicts, x_file=format_x_file(surface)), [surface.equation]
        verdicts['label'] = _round_trip(surface, points)
    elif family == 'intermediate':
        surface = builders.build_intermediate(args.d, args.N, seed=args.seed)
        points = builders.intermediate_points(surface.field, args.N)
        verdicts = {
            'dimension': dimensions.intermediate_dimension(args.N, args.d),
            'fibre': dimensions.intermediate_fibre(args.N, args.d),
            'label': _round_trip(surface, points),
        }
    else:
        surface = builders.build_extremal(args.d, args.N, args.case, seed=args.seed)
        points = builders.extremal_points(surface.field, args.N)
        verdicts = {
            'dimensions': dimensions.extremal_dimensions(args.N, args.d),
            'label': _round_trip(surface, points, strict=args.case == 'indep'),
        }
    verdicts['star_points'] = _star_rows(surface, points)
    verdicts['x_file'] = format_x_file(surface)
    return verdicts, [surface.equation]


def cmd_selftest(args):
    passed, results = run_selftest(args.seed)
    if not passed:
        failed = [name for name, r in results.items() if not r['passed']]
        logger.error(f"selftest failures: {failed}")
    return {'passed': passed, 'checks': results}, []


# Parser

def _global_flags(parser, suppress):
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument('--seed', type=Config.validate_seed, default=default(Config.DEFAULT_SEED),
                        help='seed for every randomized step')
    parser.add_argument('--json', action='store_true', default=default(False), help='emit the JSON report')
    parser.add_argument('--field', type=int, default=default(None), help='conductor n of Q(zeta_n)')
    parser.add_argument('--timing', action='store_true', default=default(False), help='record wall time')


def build_parser():
    parser = argparse.ArgumentParser(prog=Config.APP_NAME, description='Star points of projective hypersurfaces')
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    commands = parser.add_subparsers(dest='command', required=True)

    star = commands.add_parser('star', help='star point tests').add_subparsers(dest='action', required=True)
    p = star.add_parser('check', parents=[common])
    p.add_argument('x_file')
    p.add_argument('point')
    p.set_defaults(handler=cmd_star_check)
    p = star.add_parser('line', parents=[common])
    p.add_argument('x_file')
    p.add_argument('line')
    p.add_argument('--candidate', action='append', help='point to test when the line lies in X')
    p.set_defaults(handler=cmd_star_line)
    p = star.add_parser('polar', parents=[common])
    p.add_argument('x_file')
    p.add_argument('point')
    p.set_defaults(handler=cmd_star_polar)
    p = star.add_parser('polar-check', parents=[common])
    p.add_argument('x_file')
    p.add_argument('point')
    p.set_defaults(handler=cmd_star_polar_check)
    p = star.add_parser('forced', parents=[common])
    p.add_argument('x_file')
    p.add_argument('line')
    p.add_argument('known', nargs='+')
    p.set_defaults(handler=cmd_star_forced)

    p = commands.add_parser('fermat', parents=[common])
    p.add_argument('d', type=int)
    p.add_argument('N', type=int)
    p.set_defaults(handler=cmd_fermat)

    config = commands.add_parser('config', help='configuration spaces').add_subparsers(dest='action', required=True)
    for name, handler in (('dim', cmd_config_dim), ('suited', cmd_config_suited)):
        p = config.add_parser(name, parents=[common])
        p.add_argument('config_file')
        p.set_defaults(handler=handler)
    p = config.add_parser('restrict', parents=[common])
    p.add_argument('config_file')
    p.add_argument('plane')
    p.set_defaults(handler=cmd_config_restrict)
    p = config.add_parser('extend', parents=[common])
    p.add_argument('config_file')
    p.add_argument('plane')
    p.add_argument('point')
    p.set_defaults(handler=cmd_config_extend)

    p = commands.add_parser('classify3', parents=[common])
    p.add_argument('config_file')
    p.add_argument('--nonstrict', action='store_true', help='accept cones singular outside their vertex')
    p.set_defaults(handler=cmd_classify3)
    p = commands.add_parser('classify2', parents=[common])
    p.add_argument('config_file')
    p.set_defaults(handler=cmd_classify2)

    p = commands.add_parser('components', parents=[common])
    p.add_argument('d', type=int)
    p.add_argument('N', type=int)
    p.set_defaults(handler=cmd_components)

    p = commands.add_parser('build', parents=[common])
    p.add_argument('family', choices=['fermat', 'collinear', 'case1', 'intermediate', 'extremal'])
    p.add_argument('d', type=int)
    p.add_argument('N', type=int, nargs='?', default=3)
    p.add_argument('--order', type=int, default=2, help='case1: t = zeta_order^power')
    p.add_argument('--power', type=int, default=1)
    p.add_argument('--degenerate', action='store_true', help='case1: keep only the A_0 term')
    p.add_argument('--case', choices=['indep', 'dep'], default='indep', help='extremal plane pattern')
    p.set_defaults(handler=cmd_build)

    p = commands.add_parser('selftest', parents=[common])
    p.set_defaults(handler=cmd_selftest)
    return parser


def cli_dispatch(argv):
    """
    Run one command

    Args:
        argv: arguments without the program name

    Returns:
        (exit code, Report or None, rendered output or error message)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (0 if e.code == 0 else 2), None, ''

    geometry_service.seed = args.seed
    config_space_service.seed = args.seed
    start = time.perf_counter()
    try:
        verdicts, witnesses = args.handler(args)
    except INTERNAL_ERRORS as e:
        logger.error(f"internal error: {e}", exc_info=True)
        return 1, None, f"internal error: {type(e).__name__}: {e}"
    except (StarPointError, ValueError, OSError) as e:
        logger.error(f"command failed: {e}", exc_info=True)
        return 2, None, f"error: {type(e).__name__}: {e}"
    except Exception as e:
        logger.error(f"unexpected error: {e}", exc_info=True)
        return 1, None, f"internal error: {type(e).__name__}: {e}"

    timing = time.perf_counter() - start if args.timing else None
    command = ' '.join(a for a in argv if a not in ('--json', '--timing'))
    report = report_service.build(command, args.seed, verdicts, witnesses, timing)
    code = 0
    if args.handler is cmd_selftest and not verdicts['passed']:
        code = 1
    return code, report, report_service.render(report, as_json=args.json)


def main(argv=None):
    code, report, output = cli_dispatch(sys.argv[1:] if argv is None else argv)
    if output:
        stream = sys.stdout if report is not None else sys.stderr
        print(output, file=stream)
    return code


if __name__ == '__main__':
    # Validate configuration before running
    try:
        Config.validate()
        logger.debug("Configuration validated successfully")
    except ValueError as e:
        logger.error(f"Configuration error: {e}")
        logger.error("Please check STARPOINT_SEED in the .env file")
        sys.exit(2)

    sys.exit(main())
