import logging
from threading import Lock

from django.conf import settings

from .exceptions import BudgetExceeded

logger = logging.getLogger(__name__)


def knob(name):
    return settings.MULTIPLICITY[name]


class SweepBudget:
    """Counts admitted sweep instances and marks the sweep truncated once full."""

    def __init__(self, max_instances=None, max_variables=None, max_grid_values=None):
        self.max_instances = max_instances if max_instances is not None else knob('MAX_INSTANCES')
        self.max_variables = max_variables if max_variables is not None else knob('MAX_VARIABLES')
        self.max_grid_values = max_grid_values if max_grid_values is not None else knob('MAX_GRID_VALUES')
        self.admitted = 0
        self.refused = 0
        self.lock = Lock()

    def check_chart(self, chart):
        if chart.nvars > self.max_variables:
            raise BudgetExceeded(
                f"{chart} has {chart.nvars} coordinates; the limit is {self.max_variables}"
            )

    def check_grid(self, grid):
        if len(grid) > self.max_grid_values:
            raise BudgetExceeded(
                f"Grid has {len(grid)} values; the limit is {self.max_grid_values}"
            )

    def admit(self, key):
        with self.lock:
            if self.admitted >= self.max_instances:
                if not self.refused:
                    logger.warning(f"Instance budget of {self.max_instances} reached at {key}; truncating sweep")
                self.refused += 1
                return False
            self.admitted += 1
            return True

    @property
    def truncated(self):
        return self.refused > 0
