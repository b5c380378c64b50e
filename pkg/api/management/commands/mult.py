from django.core.management.base import CommandError

from api.operations import mult

from ._base import ReportCommand


class Command(ReportCommand):
    help = 'Multiplicity of a point on X_w, X^v and X_w^v by the product formula and by the tangent cone'

    def run(self, config):
        report = mult(config)
        self.emit([report], config)
        if not report.agreement:
            raise CommandError(
                f"Product {report.mu_wv_fast} disagrees with tangent cone {report.mu_wv_oracle}",
                returncode=1,
            )
