"""
Rendering of result documents: plain-text tables, JSON and xlsx workbooks.

A document is a dict of scalar fields (strings, booleans, lists of strings)
plus an optional 'tables' dict mapping a table name to a list of row dicts.
"""

import json
import logging
import os

import pandas as pd
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter

logger = logging.getLogger(__name__)

HEADER_FONT = Font(bold=True, size=12)
HEADER_FILL = PatternFill(start_color="D9D9D9", end_color="D9D9D9", fill_type="solid")
KEY_FILL = PatternFill(start_color="E6F2FF", end_color="E6F2FF", fill_type="solid")
THIN_BORDER = Border(
    left=Side(style='thin'),
    right=Side(style='thin'),
    top=Side(style='thin'),
    bottom=Side(style='thin')
)


def _scalar_text(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if value is None:
        return '-'
    if isinstance(value, (list, tuple)):
        return ', '.join(_scalar_text(v) for v in value) if value else '(none)'
    return str(value)


def table_frame(rows):
    frame = pd.DataFrame(rows)
    return frame.map(_scalar_text) if hasattr(frame, 'map') else frame.applymap(_scalar_text)


def render_text(doc):
    lines = []
    for key, value in doc.items():
        if key == 'tables':
            continue
        if isinstance(value, (list, tuple)) and value and len(_scalar_text(value)) > 60:
            lines.append(f"{key}:")
            lines.extend(f"  {_scalar_text(v)}" for v in value)
        else:
            lines.append(f"{key}: {_scalar_text(value)}")
    for name, rows in doc.get('tables', {}).items():
        lines.append('')
        lines.append(f"[{name}]")
        if rows:
            lines.append(table_frame(rows).to_string(index=False))
        else:
            lines.append('(empty)')
    return '\n'.join(lines) + '\n'


def render_json(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + '\n'


def render(doc, fmt):
    return render_json(doc) if fmt == 'json' else render_text(doc)


def _autofit(worksheet, frame):
    for i, col in enumerate(frame.columns, start=1):
        width = max([len(str(col))] + [len(str(v)) for v in frame[col]]) + 2
        worksheet.column_dimensions[get_column_letter(i)].width = min(width * 1.2, 60)


def _style_sheet(worksheet, frame, key_column=False):
    for cell in worksheet[1]:
        cell.font = HEADER_FONT
        cell.fill = HEADER_FILL
        cell.alignment = Alignment(horizontal='center')
        cell.border = THIN_BORDER
    for row in worksheet.iter_rows(min_row=2, max_row=len(frame) + 1):
        for cell in row:
            cell.border = THIN_BORDER
        if key_column:
            row[0].font = Font(bold=True)
            row[0].fill = KEY_FILL
    _autofit(worksheet, frame)


def write_workbook(doc, path):
    """Summary sheet with the scalar fields, then one sheet per table.

    `path` may also be a binary buffer (the API streams workbooks from memory).
    """
    if isinstance(path, (str, os.PathLike)):
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    summary = pd.DataFrame(
        [{'Field': key, 'Value': _scalar_text(value)} for key, value in doc.items() if key != 'tables'])
    with pd.ExcelWriter(path, engine='openpyxl') as writer:
        summary.to_excel(writer, sheet_name='Summary', index=False)
        _style_sheet(writer.sheets['Summary'], summary, key_column=True)
        for name, rows in doc.get('tables', {}).items():
            frame = table_frame(rows) if rows else pd.DataFrame({'(empty)': []})
            sheet = name[:31]
            frame.to_excel(writer, sheet_name=sheet, index=False)
            _style_sheet(writer.sheets[sheet], frame)
    logger.info(f"workbook written ({len(doc.get('tables', {}))} tables)")
    return path
