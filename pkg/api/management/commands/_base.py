import json
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from api.reports import render, write_output
from api.serializers import RunConfigSerializer

logger = logging.getLogger(__name__)

# flags that map one-to-one onto RunConfig fields
CONFIG_FLAGS = ('family', 'd', 'n', 'w', 'v', 'tau', 'point', 'grid', 'limit', 'max_instances',
                'max_variables', 'workers', 'format', 'out', 'samuel')

LOGGER_NAMES = ('algebra', 'schubert', 'api')


def _read_point(text):
    """A point flag is 'fixed', a path to a JSON file, or inline JSON."""
    if text == 'fixed':
        return text
    path = Path(text)
    try:
        is_file = path.is_file()
    except OSError:
        # inline JSON longer than a file name
        is_file = False
    if is_file:
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise CommandError(f"--point file {path} is not valid JSON: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        raise CommandError(f"--point is neither a JSON file nor inline JSON: {text}") from None


def _read_grid(text):
    if isinstance(text, list):
        return text
    return [part.strip() for part in str(text).split(',') if part.strip()]


class ReportCommand(BaseCommand):
    """Shared flags, config loading and output for the multiplicity commands."""

    def add_arguments(self, parser):
        parser.add_argument('--config', help='JSON file supplying any of the flags below')
        parser.add_argument('--family', choices=('grassmannian', 'quadric'))
        parser.add_argument('--d', type=int)
        parser.add_argument('--n', type=int)
        parser.add_argument('--w', help='Coset representative such as 356 or 2,5,10; quadric index i')
        parser.add_argument('--v', help='Coset representative; quadric index j')
        parser.add_argument('--tau', help='Chart (and cell) representative')
        parser.add_argument('--point', help="'fixed', a JSON file, or inline JSON")
        parser.add_argument('--grid', help='Comma separated rationals, e.g. -1,0,1')
        parser.add_argument('--limit', type=int, help='Points per instance')
        parser.add_argument('--max-instances', dest='max_instances', type=int)
        parser.add_argument('--max-variables', dest='max_variables', type=int)
        parser.add_argument('--workers', type=int)
        parser.add_argument('--format', choices=('json', 'csv', 'text'))
        parser.add_argument('--out', help='Write machine output to this file')
        parser.add_argument('--samuel', action='store_true', default=None,
                            help='Also fit the Hilbert-Samuel sequence on small charts')

    def load_config(self, options):
        data = {}
        if options.get('config'):
            path = Path(options['config'])
            if not path.exists():
                raise CommandError(f"Config file {path} does not exist")
            data.update(json.loads(path.read_text()))
        for flag in CONFIG_FLAGS:
            if options.get(flag) is not None:
                data[flag] = options[flag]
        if isinstance(data.get('point'), str):
            data['point'] = _read_point(data['point'])
        if 'grid' in data:
            data['grid'] = _read_grid(data['grid'])
        serializer = RunConfigSerializer(data=data)
        if not serializer.is_valid():
            raise CommandError(f"Invalid configuration: {json.dumps(serializer.errors)}")
        config = serializer.validated_data
        logger.debug(f"Run configuration: {data}")
        return config

    def emit(self, reports, config, summary=None):
        """Machine output to --out (or stdout when absent); the summary always on stdout."""
        text = render(reports, config['format'])
        if config.get('out'):
            write_output(text, config['out'])
        else:
            self.stdout.write(text, ending='')
        if summary:
            self.stdout.write(summary)

    def run(self, config):
        raise NotImplementedError

    def handle(self, *args, **options):
        if options.get('verbosity', 1) >= 3:
            for name in LOGGER_NAMES:
                logging.getLogger(name).setLevel(logging.DEBUG)
        config = self.load_config(options)
        try:
            self.run(config)
        except ValueError as e:
            # domain errors end the run with their message
            logger.error(f"{type(e).__name__}: {e}")
            raise CommandError(str(e), returncode=2) from e
