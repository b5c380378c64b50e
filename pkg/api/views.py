import logging

from rest_framework import status
from rest_framework.response import Response
from rest_framework.views import APIView

from .operations import equations, mult, quadric_sweep
from .reports import report_rows
from .serializers import MultiplicityReportSerializer, RunConfigSerializer

logger = logging.getLogger(__name__)


class RunConfigAPIView(APIView):
    """POST a RunConfig; domain errors come back as 400 with an error message."""
    family = None

    def operate(self, config):
        raise NotImplementedError

    def post(self, request):
        data = dict(request.data)
        if self.family:
            data['family'] = self.family
        serializer = RunConfigSerializer(data=data)
        if not serializer.is_valid():
            return Response({'error': serializer.errors}, status=status.HTTP_400_BAD_REQUEST)
        try:
            return Response(self.operate(serializer.validated_data))
        except ValueError as e:
            logger.warning(f"Rejected {self.__class__.__name__} request: {e}")
            return Response({'error': str(e)}, status=status.HTTP_400_BAD_REQUEST)


class EquationsAPIView(RunConfigAPIView):
    def operate(self, config):
        return equations(config)


class MultiplicityAPIView(RunConfigAPIView):
    def operate(self, config):
        return MultiplicityReportSerializer(mult(config)).data


class QuadricAPIView(RunConfigAPIView):
    family = 'quadric'

    def operate(self, config):
        if config.get('point') is not None:
            return MultiplicityReportSerializer(mult(config)).data
        result = quadric_sweep(config)
        return {
            'summary': result.summary(),
            'reports': report_rows(result.reports),
        }
