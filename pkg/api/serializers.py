from rest_framework import serializers

from algebra.exceptions import AlgebraError
from algebra.polynomials import format_rational, parse_rational
from schubert.charts import AffinePoint, build_chart, point_from_matrix
from schubert.combinatorics import CosetRep, GrassShape, maximal_rep, minimal_rep
from schubert.engine import GRASSMANNIAN, QUADRIC
from schubert.quadric import QuadricPoint, QuadricShape, SchubertIndex

FORMATS = ('json', 'csv', 'text')


class RationalField(serializers.Field):
    """Rationals travel as "num/den" strings (integers also accepted)."""

    def to_internal_value(self, data):
        try:
            return parse_rational(data)
        except AlgebraError as e:
            raise serializers.ValidationError(str(e))

    def to_representation(self, value):
        return format_rational(value)


class RunConfigSerializer(serializers.Serializer):
    """Validated run configuration shared by the commands and the HTTP API.

    For the quadric family ``w`` and ``v`` carry the indices i and j.
    """
    family = serializers.ChoiceField(choices=(GRASSMANNIAN, QUADRIC), default=GRASSMANNIAN)
    d = serializers.IntegerField(min_value=1, required=False)
    n = serializers.IntegerField(min_value=1)
    w = serializers.CharField(required=False)
    v = serializers.CharField(required=False)
    tau = serializers.CharField(required=False)
    point = serializers.JSONField(required=False)
    grid = serializers.ListField(child=RationalField(), required=False, default=list)
    limit = serializers.IntegerField(min_value=1, required=False)
    max_instances = serializers.IntegerField(min_value=1, required=False)
    max_variables = serializers.IntegerField(min_value=1, required=False)
    workers = serializers.IntegerField(min_value=1, required=False)
    format = serializers.ChoiceField(choices=FORMATS, default='text')
    out = serializers.CharField(required=False)
    samuel = serializers.BooleanField(default=False)

    def validate_grid(self, value):
        if len(set(value)) != len(value):
            raise serializers.ValidationError("Grid values must be distinct")
        return value

    def validate(self, attrs):
        try:
            if attrs['family'] == QUADRIC:
                return self._validate_quadric(attrs)
            return self._validate_grassmannian(attrs)
        except ValueError as e:
            raise serializers.ValidationError(str(e))

    def _validate_grassmannian(self, attrs):
        if 'd' not in attrs:
            raise serializers.ValidationError({'d': "The Grassmannian family needs d"})
        shape = GrassShape(attrs['d'], attrs['n'])
        attrs['shape'] = shape
        for key in ('w', 'v', 'tau'):
            attrs[key] = CosetRep.parse(attrs[key], shape).check(shape) if attrs.get(key) else None

        point = attrs.get('point')
        if point is None or point == 'fixed':
            attrs['point'] = None
        elif isinstance(point, list):
            chart, parsed = point_from_matrix(shape, point)
            if attrs.get('tau') is not None and attrs['tau'] != chart.tau:
                raise serializers.ValidationError(
                    {'point': f"Matrix lies in the cell of {chart.tau}, not {attrs['tau']}"}
                )
            attrs['tau'] = chart.tau
            attrs['point'] = parsed
        elif isinstance(point, dict):
            if attrs.get('tau') is None:
                raise serializers.ValidationError({'tau': "Chart coordinates need tau"})
            parsed = AffinePoint.from_json(point)
            parsed.values(build_chart(shape, attrs['tau']))
            attrs['point'] = parsed
        else:
            raise serializers.ValidationError({'point': "Expected chart coordinates or an n x d matrix"})
        return attrs

    def _validate_quadric(self, attrs):
        shape = QuadricShape(attrs['n'])
        attrs['shape'] = shape
        attrs['w'] = SchubertIndex(shape.n, int(attrs['w'])) if attrs.get('w') else None
        attrs['v'] = SchubertIndex(shape.n, int(attrs['v'])) if attrs.get('v') else None
        point = attrs.get('point')
        if point is not None:
            if not isinstance(point, list):
                raise serializers.ValidationError({'point': "A quadric point is an array of rationals"})
            attrs['point'] = QuadricPoint.from_json(point).check(shape)
        return attrs


def default_pair(config):
    """(w, v) with missing ends filled by the maximal and minimal representatives."""
    shape = config['shape']
    return config.get('w') or maximal_rep(shape), config.get('v') or minimal_rep(shape)


class MultiplicityReportSerializer(serializers.Serializer):
    family = serializers.CharField()
    d = serializers.IntegerField(allow_null=True)
    n = serializers.IntegerField()
    tau = serializers.CharField(allow_null=True)
    w = serializers.CharField()
    v = serializers.CharField()
    point = serializers.JSONField()
    mu_w = serializers.IntegerField()
    mu_v = serializers.IntegerField()
    mu_wv_fast = serializers.IntegerField()
    mu_wv_oracle = serializers.IntegerField()
    mu_wv_samuel = serializers.IntegerField(allow_null=True)
    deg_zw = serializers.IntegerField(allow_null=True)
    deg_zv = serializers.IntegerField(allow_null=True)
    deg_zwv = serializers.IntegerField(allow_null=True)
    degree_identity = serializers.BooleanField(allow_null=True)
    cone_w_at_point = serializers.BooleanField(allow_null=True)
    cone_v_at_point = serializers.BooleanField(allow_null=True)
    cone_at_origin = serializers.BooleanField(allow_null=True)
    smooth_w = serializers.BooleanField(allow_null=True)
    smooth_v = serializers.BooleanField(allow_null=True)
    smooth_wv = serializers.BooleanField(allow_null=True)
    local_dim = serializers.IntegerField(allow_null=True)
    expected_dim = serializers.IntegerField(allow_null=True)
    dimension_ok = serializers.BooleanField(allow_null=True)
    agreement = serializers.BooleanField()
