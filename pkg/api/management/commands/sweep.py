from django.core.management.base import CommandError

from api.operations import sweep

from ._base import ReportCommand


class Command(ReportCommand):
    help = 'Check the product formula on every v <= tau <= w and every sampled cell point'

    def run(self, config):
        result = sweep(config)
        self.emit(result.reports, config, summary=result.summary())
        if result.failed:
            raise CommandError(f"{result.failed} instances disagree", returncode=1)
