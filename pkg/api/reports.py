"""Rendering of multiplicity reports as JSON, CSV or plain text."""
import json
import logging
from pathlib import Path

import pandas as pd

from .serializers import MultiplicityReportSerializer

logger = logging.getLogger(__name__)


def report_rows(reports):
    return MultiplicityReportSerializer(reports, many=True).data


def render_json(reports):
    return json.dumps(report_rows(reports), indent=2) + '\n'


def render_csv(reports):
    """One row per (w, v, tau, point); the point column holds its JSON."""
    fields = list(MultiplicityReportSerializer().fields)
    rows = [dict(row) for row in report_rows(reports)]
    for row in rows:
        row['point'] = json.dumps(row['point'], sort_keys=True)
    return pd.DataFrame(rows, columns=fields).to_csv(index=False)


def _label(report):
    if report.family == 'quadric':
        return f"X_{report.w}^{report.v} in the quadric n={report.n}"
    return f"X_{report.w}^{report.v} on O_{report.tau} in G({report.d},{report.n})"


def render_text(reports):
    lines = []
    for r in reports:
        point = json.dumps(r.point, sort_keys=True)
        status = 'agree' if r.agreement else 'DISAGREE'
        line = (f"{_label(r)} at {point}: mu_w={r.mu_w} mu_v={r.mu_v} "
                f"fast={r.mu_wv_fast} oracle={r.mu_wv_oracle}")
        if r.mu_wv_samuel is not None:
            line += f" samuel={r.mu_wv_samuel}"
        if r.deg_zwv is not None:
            line += f" deg={r.deg_zw}*{r.deg_zv}->{r.deg_zwv}"
        lines.append(f"{line} {status}")
    return '\n'.join(lines) + ('\n' if lines else '')


RENDERERS = {
    'json': render_json,
    'csv': render_csv,
    'text': render_text,
}


def render(reports, fmt):
    return RENDERERS[fmt](reports)


def write_output(text, path):
    path = Path(path)
    if path.parent != Path('.'):
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info(f"Wrote {path}")
