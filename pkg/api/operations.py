"""The equations, mult, sweep and quadric operations behind the commands and views."""
import logging

from schubert.charts import build_chart, opposite_ideal, richardson_ideal, schubert_ideal, translate_to_origin
from schubert.combinatorics import require_leq
from schubert.engine import QUADRIC, Instance, SweepConfig, build_report, verify_theorem
from schubert.exceptions import SchubertError
from schubert.quadric import (
    opposite_singular_locus_index,
    quadric_indices,
    quadric_report,
    singular_locus_index,
    verify_quadric,
)

from .serializers import default_pair

logger = logging.getLogger(__name__)

DEFAULT_QUADRIC_GRID = (-1, 0, 1)


def _require_tau(config):
    if config.get('tau') is None:
        raise SchubertError("This operation needs --tau (or a matrix point)")
    return config['tau']


def equations(config):
    """Chart index set and minimal generators of Y_w, Y^v, Y_w^v, translated to the point if given."""
    shape = config['shape']
    tau = _require_tau(config)
    w, v = default_pair(config)
    require_leq(tau, w, 'tau', 'w')
    require_leq(v, tau, 'v', 'tau')
    chart = build_chart(shape, tau)
    systems = [
        (f"X_{w}", schubert_ideal(chart, w, minimal=True)),
        (f"X^{v}", opposite_ideal(chart, v, minimal=True)),
        (f"X_{w}^{v}", richardson_ideal(chart, w, v, minimal=True)),
    ]
    data = {
        'chart': f"O_{tau}",
        'shape': str(shape),
        'indices': [str(idx) for idx in chart.indices],
        'systems': [
            {'variety': label, 'generators': ideal.to_text().splitlines()}
            for label, ideal in systems
        ],
    }
    point = config.get('point')
    if point is not None:
        data['point'] = point.to_json()
        data['translated'] = [
            {'variety': label, 'generators': translate_to_origin(ideal, point).to_text().splitlines()}
            for label, ideal in systems
        ]
    return data


def render_equations(data):
    lines = [f"chart {data['chart']} in {data['shape']}", 'indices: ' + ' '.join(data['indices'])]

    def block(title, systems):
        for system in systems:
            gens = system['generators']
            lines.append(f"{system['variety']}{title}: {len(gens)} generators")
            lines.extend(gens)

    block('', data['systems'])
    if 'translated' in data:
        block(' at the point', data['translated'])
    return '\n'.join(lines) + '\n'


def mult(config):
    shape = config['shape']
    if config['family'] == QUADRIC:
        if config.get('w') is None or config.get('v') is None or config.get('point') is None:
            raise SchubertError("The quadric family needs --w (i), --v (j) and --point")
        return quadric_report(shape, config['w'], config['v'], config['point'])
    tau = _require_tau(config)
    w, v = default_pair(config)
    point = config.get('point') or build_chart(shape, tau).origin()
    return build_report(Instance(shape, w, v, tau, point, config.get('samuel', False)))


def sweep(config):
    shape = config['shape']
    if config['family'] == QUADRIC:
        return quadric_sweep(config)
    sweep_config = SweepConfig(
        grid=tuple(config.get('grid') or ()),
        limit=config.get('limit'),
        max_instances=config.get('max_instances'),
        max_variables=config.get('max_variables'),
        workers=config.get('workers'),
        samuel=config.get('samuel', False),
        w=config.get('w'),
        v=config.get('v'),
        tau=config.get('tau'),
    )
    return verify_theorem(shape, sweep_config)


def quadric_sweep(config):
    return verify_quadric(
        config['shape'],
        grid=tuple(config.get('grid') or DEFAULT_QUADRIC_GRID),
        limit=config.get('limit'),
        i=config.get('w'),
        j=config.get('v'),
    )


def singular_loci(shape):
    """Index of Sing X_i and Sing X^i for every Schubert index, None when smooth."""
    table = []
    for idx in quadric_indices(shape):
        sing = singular_locus_index(shape, idx)
        opposite = opposite_singular_locus_index(shape, idx)
        table.append({
            'index': idx.i,
            'sing_schubert': sing.i if sing else None,
            'sing_opposite': opposite.i if opposite else None,
        })
    return table
