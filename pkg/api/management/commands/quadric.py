from django.core.management.base import CommandError

from api.operations import mult, quadric_sweep, singular_loci

from ._base import ReportCommand


class Command(ReportCommand):
    help = 'Closed-form multiplicities on the odd quadric against tangent cones'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--singular-loci', action='store_true', dest='singular_loci',
                            help='Also list Sing X_i and Sing X^j for every index')

    def load_config(self, options):
        options['family'] = 'quadric'
        return super().load_config(options)

    def handle(self, *args, **options):
        self.show_loci = options.get('singular_loci', False)
        return super().handle(*args, **options)

    def run(self, config):
        if self.show_loci:
            for row in singular_loci(config['shape']):
                self.stdout.write(
                    f"i={row['index']} sing X_i={row['sing_schubert'] or '-'} sing X^i={row['sing_opposite'] or '-'}"
                )
        if config.get('point') is not None:
            report = mult(config)
            self.emit([report], config)
            if not report.agreement:
                raise CommandError("Closed forms disagree with the tangent cone", returncode=1)
            return
        result = quadric_sweep(config)
        self.emit(result.reports, config, summary=result.summary())
        if result.failed:
            raise CommandError(f"{result.failed} instances disagree", returncode=1)
