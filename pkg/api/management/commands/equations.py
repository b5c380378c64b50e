import json

from api.operations import equations, render_equations
from api.reports import write_output

from ._base import ReportCommand


class Command(ReportCommand):
    help = 'Print the chart index set and the equations of X_w, X^v and X_w^v on O_tau'

    def run(self, config):
        data = equations(config)
        if config['format'] == 'json':
            text = json.dumps(data, indent=2) + '\n'
        else:
            text = render_equations(data)
        if config.get('out'):
            write_output(text, config['out'])
        else:
            self.stdout.write(text, ending='')
