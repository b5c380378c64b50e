"""Multiplicities on Schubert, opposite Schubert and Richardson varieties of G(d, n).

The fast path multiplies the Schubert and opposite Schubert multiplicities at a
point; the oracle takes the tangent cone of the Richardson ideal directly. A
sweep runs both on every (v <= tau <= w) and a grid of cell points.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import product
import json
import logging
import os

import django

from algebra.local import (
    affine_dimension,
    jacobian_rank,
    local_invariants,
    projective_degree,
    samuel_multiplicity,
)
from algebra.polynomials import parse_rational

from .budget import SweepBudget, knob
from .charts import (
    AffinePoint,
    build_chart,
    expected_dimension,
    in_cell,
    index_of_variable,
    is_cone_over_origin,
    opposite_ideal,
    richardson_ideal,
    schubert_ideal,
    translate_to_origin,
)
from .combinatorics import positive_root_indices, require_leq, richardson_triples
from .exceptions import MembershipError, MultiplicityMismatch, PointNotInCellError

logger = logging.getLogger(__name__)

GRASSMANNIAN = 'grassmannian'
QUADRIC = 'quadric'


@dataclass
class MultiplicityReport:
    family: str
    n: int
    w: str
    v: str
    point: object
    mu_w: int
    mu_v: int
    mu_wv_fast: int
    mu_wv_oracle: int
    agreement: bool
    d: int = None
    tau: str = None
    mu_wv_samuel: int = None
    deg_zw: int = None
    deg_zv: int = None
    deg_zwv: int = None
    degree_identity: bool = None
    cone_w_at_point: bool = None
    cone_v_at_point: bool = None
    cone_at_origin: bool = None
    smooth_w: bool = None
    smooth_v: bool = None
    smooth_wv: bool = None
    local_dim: int = None
    expected_dim: int = None
    dimension_ok: bool = None

    @property
    def smoothness_consistent(self):
        return self.smooth_wv == (self.smooth_w and self.smooth_v) == (self.mu_wv_oracle == 1)

    def sort_key(self):
        return (self.family, self.d or 0, self.n, self.w, self.v, self.tau or '',
                json.dumps(self.point, sort_keys=True))

    def as_dict(self):
        return asdict(self)


# cached local algebra

@lru_cache(maxsize=None)
def _invariants(ideal):
    return local_invariants(ideal)


@lru_cache(maxsize=None)
def _cone(ideal):
    return is_cone_over_origin(ideal)


@lru_cache(maxsize=None)
def _dimension(ideal):
    return affine_dimension(ideal)


def _values_for(ideal, point):
    mapping = point.as_dict()
    return [mapping[index_of_variable(name)] for name in ideal.ring.names]


def _require_on(ideal, point, label):
    if ideal.is_unit_marker() or not ideal.vanishes_at(_values_for(ideal, point)):
        raise MembershipError(f"Point {point} is not on {label}")


def _require_cell(chart, point):
    if not in_cell(chart, point):
        raise PointNotInCellError(f"Point {point} is not in the cell C_{chart.tau}")


# multiplicities

def mult_schubert_at(shape, w, tau, point):
    """Multiplicity of X_w at a point of the cell C_tau.

    Y_w is a cone over every point of the cell, so the value must match the
    multiplicity at e_tau.
    """
    require_leq(tau, w, 'tau', 'w')
    chart = build_chart(shape, tau)
    _require_cell(chart, point)
    ideal = schubert_ideal(chart, w)
    _require_on(ideal, point, f"X_{w}")
    at_point, _ = _invariants(translate_to_origin(ideal, point))
    at_origin, _ = _invariants(ideal)
    if at_point != at_origin:
        raise MultiplicityMismatch(
            f"X_{w}: multiplicity {at_point} at {point} but {at_origin} at e_{tau}"
        )
    return at_point


def mult_opposite_at(shape, v, tau, point):
    chart = build_chart(shape, tau)
    ideal = opposite_ideal(chart, v)
    _require_on(ideal, point, f"X^{v}")
    multiplicity, _ = _invariants(translate_to_origin(ideal, point))
    return multiplicity


def mult_richardson_fast(shape, w, v, tau, point):
    chart = build_chart(shape, tau)
    _require_on(richardson_ideal(chart, w, v), point, f"X_{w}^{v}")
    return mult_schubert_at(shape, w, tau, point) * mult_opposite_at(shape, v, tau, point)


def mult_richardson_oracle(shape, w, v, tau, point):
    chart = build_chart(shape, tau)
    ideal = richardson_ideal(chart, w, v)
    _require_on(ideal, point, f"X_{w}^{v}")
    multiplicity, _ = _invariants(translate_to_origin(ideal, point))
    return multiplicity


@lru_cache(maxsize=None)
def degree_product_check(shape, w, v, tau):
    """Degrees of the cones Z_w, Z^v, Z_w^v at e_tau and whether the last is the product."""
    require_leq(v, tau, 'v', 'tau')
    require_leq(tau, w, 'tau', 'w')
    chart = build_chart(shape, tau)
    deg_w = projective_degree(schubert_ideal(chart, w))
    deg_v = projective_degree(opposite_ideal(chart, v))
    deg_wv = projective_degree(richardson_ideal(chart, w, v))
    return deg_w, deg_v, deg_wv, deg_wv == deg_w * deg_v


def jacobian_corank(ideal, point):
    """(codimension - Jacobian rank) measured against the local dimension at ``point``."""
    _require_on(ideal, point, 'the variety')
    _, local_dim = _invariants(translate_to_origin(ideal, point))
    nvars = ideal.ring.ngens
    rank = jacobian_rank(ideal, _values_for(ideal, point))
    return max(0, nvars - rank - local_dim)


def sample_points(ideal, chart, grid, cell_only=True, limit=None):
    """Grid points of the chart on the variety, in lexicographic grid order."""
    grid = [parse_rational(g) for g in grid]
    if ideal.is_unit_marker():
        return []
    fixed = set(positive_root_indices(chart.shape, chart.tau)) if cell_only else set()
    free = [k for k, idx in enumerate(chart.indices) if idx not in fixed]
    points = []
    values = [0] * chart.nvars
    for combo in product(grid, repeat=len(free)):
        for k, value in zip(free, combo):
            values[k] = value
        if ideal.vanishes_at(values):
            points.append(AffinePoint.from_values(chart, values))
            if limit is not None and len(points) >= limit:
                break
    return points


# reports

@dataclass(frozen=True)
class Instance:
    shape: object
    w: object
    v: object
    tau: object
    point: object
    samuel: bool = False


def build_report(instance):
    """Full report for one (w, v, tau, point); raises on invalid input."""
    shape, w, v, tau, point = instance.shape, instance.w, instance.v, instance.tau, instance.point
    chart = build_chart(shape, tau)
    i_w = schubert_ideal(chart, w)
    i_v = opposite_ideal(chart, v)
    i_wv = richardson_ideal(chart, w, v)

    mu_w = mult_schubert_at(shape, w, tau, point)
    mu_v = mult_opposite_at(shape, v, tau, point)
    fast = mu_w * mu_v
    translated = translate_to_origin(i_wv, point)
    oracle, local_dim = _invariants(translated)

    samuel = None
    if instance.samuel and chart.nvars <= knob('SAMUEL_MAX_VARIABLES'):
        samuel = samuel_multiplicity(translated)

    deg_w, deg_v, deg_wv, degree_ok = degree_product_check(shape, w, v, tau)
    cone_v = _cone(translate_to_origin(i_v, point))
    if not point.is_origin():
        if cone_v:
            logger.debug(f"Y^{v} is a cone over {point} on {chart}")
        else:
            logger.info(f"Y^{v} is not a cone over {point} on {chart}")

    expected = expected_dimension(shape, w, v)
    # Y_w, Y^v and Y_w^v all need the dimension their rank conditions predict
    factors_ok = (_dimension(i_w) == expected_dimension(shape, w=w)
                  and _dimension(i_v) == expected_dimension(shape, v=v))
    if not factors_ok:
        logger.warning(f"Y_{w} or Y^{v} has unexpected dimension on {chart}")
    agreement = fast == oracle and (samuel is None or samuel == oracle)
    report = MultiplicityReport(
        family=GRASSMANNIAN,
        d=shape.d,
        n=shape.n,
        tau=tau.serialize(shape.n),
        w=w.serialize(shape.n),
        v=v.serialize(shape.n),
        point=point.to_json(),
        mu_w=mu_w,
        mu_v=mu_v,
        mu_wv_fast=fast,
        mu_wv_oracle=oracle,
        mu_wv_samuel=samuel,
        deg_zw=deg_w,
        deg_zv=deg_v,
        deg_zwv=deg_wv,
        degree_identity=degree_ok,
        cone_w_at_point=_cone(translate_to_origin(i_w, point)),
        cone_v_at_point=cone_v,
        cone_at_origin=_cone(i_w) and _cone(i_v) and _cone(i_wv),
        smooth_w=jacobian_corank(i_w, point) == 0,
        smooth_v=jacobian_corank(i_v, point) == 0,
        smooth_wv=jacobian_corank(i_wv, point) == 0,
        local_dim=local_dim,
        expected_dim=expected,
        dimension_ok=factors_ok and _dimension(i_wv) == expected == local_dim,
        agreement=agreement,
    )
    if not agreement:
        logger.error(f"Disagreement on X_{w}^{v} at {point} ({chart}): fast={fast} oracle={oracle} samuel={samuel}")
    elif not (report.degree_identity and report.dimension_ok and report.smoothness_consistent):
        logger.warning(f"Secondary check failed on X_{w}^{v} at {point} ({chart})")
    return report


# sweeps

@dataclass(frozen=True)
class SweepConfig:
    grid: tuple = ()
    limit: int = None
    max_instances: int = None
    max_variables: int = None
    workers: int = None
    samuel: bool = False
    w: object = None
    v: object = None
    tau: object = None


@dataclass
class SweepResult:
    reports: list = field(default_factory=list)
    truncated: bool = False

    @property
    def checked(self):
        return len(self.reports)

    @property
    def agreed(self):
        return sum(1 for r in self.reports if r.agreement)

    @property
    def failed(self):
        return self.checked - self.agreed

    def summary(self):
        line = f"checked={self.checked} agreed={self.agreed} failed={self.failed}"
        return line + ' truncated=true' if self.truncated else line


def _selected_triples(shape, config):
    for v, tau, w in richardson_triples(shape):
        if config.w is not None and w != config.w:
            continue
        if config.v is not None and v != config.v:
            continue
        if config.tau is not None and tau != config.tau:
            continue
        yield v, tau, w


def sweep_instances(shape, config, budget):
    """Instances of a sweep in canonical order, stopping when the budget is spent."""
    budget.check_grid(config.grid)
    limit = config.limit if config.limit is not None else knob('MAX_POINTS_PER_INSTANCE')
    instances = []
    for v, tau, w in _selected_triples(shape, config):
        chart = build_chart(shape, tau)
        budget.check_chart(chart)
        origin = chart.origin()
        points = [origin]
        if config.grid:
            sampled = sample_points(richardson_ideal(chart, w, v), chart, config.grid, True, limit + 1)
            points.extend(p for p in sampled if p != origin)
            points = points[:limit] if limit else points
        for point in points:
            if not budget.admit((str(w), str(v), str(tau))):
                return instances
            instances.append(Instance(shape, w, v, tau, point, config.samuel))
    return instances


def _init_worker():
    django.setup()


def resolve_workers(workers):
    if workers is None:
        workers = knob('DEFAULT_WORKERS')
    return workers or os.cpu_count() or 1


def run_instances(instances, workers=None):
    workers = resolve_workers(workers)
    if workers == 1 or len(instances) < 2:
        return [build_report(inst) for inst in instances]
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker) as executor:
        return list(executor.map(build_report, instances, chunksize=max(1, len(instances) // (4 * workers))))


def verify_theorem(shape, config=None):
    """Fast path against oracle on every selected (v <= tau <= w) and point."""
    config = config or SweepConfig()
    budget = SweepBudget(max_instances=config.max_instances, max_variables=config.max_variables)
    instances = sweep_instances(shape, config, budget)
    logger.info(f"Sweeping {len(instances)} instances on {shape}")
    reports = sorted(run_instances(instances, config.workers), key=MultiplicityReport.sort_key)
    result = SweepResult(reports=reports, truncated=budget.truncated)
    logger.info(f"{shape}: {result.summary()}")
    return result
