#!/usr/bin/env python3
"""
Jet toolkit API - pure JSON API (no web UI)
Accepts input-file texts and returns the same result documents as the CLI.
"""

import logging
import os
from datetime import datetime
from io import BytesIO

from flask import Flask, Response, jsonify, request, send_file
from flask_cors import CORS

from algebra_core import CapTooSmallError
from cli import COMMAND_INPUTS, COMMANDS, execute
from groebner import ResourceLimitError
from report_writer import render_text, write_workbook
from settings import configure_logging, resolve_format

configure_logging(default_level='INFO')
app_log = logging.getLogger(__name__)

app = Flask(__name__)
CORS(app)  # Enable CORS for frontend access

app.config['MAX_CONTENT_LENGTH'] = 1 * 1024 * 1024  # input files are small text

SERVICE_NAME = 'Jet Toolkit API'
VERSION = '1.0'


def _run(command):
    body = request.get_json(silent=True)
    if not isinstance(body, dict):
        return None, (jsonify({'error': 'Expected a JSON body with "files" and "options"'}), 400)
    files = body.get('files') or {}
    options = body.get('options') or {}
    if not isinstance(files, dict) or not isinstance(options, dict):
        return None, (jsonify({'error': '"files" and "options" must be JSON objects'}), 400)
    unknown = sorted(set(files) - set(COMMAND_INPUTS[command]))
    if unknown:
        return None, (jsonify({'error': f'Unknown input files for {command}: {unknown}'}), 400)
    try:
        return execute(command, files, options), None
    except (ResourceLimitError, CapTooSmallError) as e:
        app_log.warning(f"{command}: limit reached: {e}")
        return None, (jsonify({'error': str(e), 'kind': 'limit'}), 422)
    except ValueError as e:
        return None, (jsonify({'error': str(e), 'kind': 'input'}), 400)
    except Exception as e:
        app_log.error(f"{command} failed: {e}", exc_info=True)
        return None, (jsonify({'error': f'Processing failed: {str(e)}'}), 500)


@app.route('/api/<command>', methods=['POST'])
def run_command(command):
    """
    Main API endpoint: input texts in, result document out.
    """
    if command not in COMMANDS:
        return jsonify({'error': f'Unknown command {command}'}), 404
    try:
        fmt = resolve_format(request.args.get('format') or 'json')
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    doc, failure = _run(command)
    if failure:
        return failure
    if fmt == 'text':
        return Response(render_text(doc), mimetype='text/plain')
    return jsonify(doc)


@app.route('/api/<command>/xlsx', methods=['POST'])
def run_command_workbook(command):
    """Same as /api/<command> but returns the result as an xlsx workbook."""
    if command not in COMMANDS:
        return jsonify({'error': f'Unknown command {command}'}), 404
    doc, failure = _run(command)
    if failure:
        return failure
    output_buffer = BytesIO()
    write_workbook(doc, output_buffer)
    output_buffer.seek(0)
    return send_file(
        output_buffer,
        as_attachment=True,
        download_name=f'{command}_report.xlsx',
        mimetype='application/vnd.openxmlformats-officedocument.spreadsheetml.sheet'
    )


@app.route('/health', methods=['GET'])
def health_check():
    return jsonify({
        'status': 'healthy',
        'timestamp': datetime.now().isoformat(),
        'commands': list(COMMANDS)
    })


@app.route('/api/info', methods=['GET'])
def api_info():
    return jsonify({
        'service': SERVICE_NAME,
        'version': VERSION,
        'max_body_size': '1MB',
        'commands': {name: sorted(roles) for name, roles in COMMAND_INPUTS.items()},
        'endpoints': {
            '/api/<command>': 'POST - {"files": {...}, "options": {...}} -> result document',
            '/api/<command>/xlsx': 'POST - same body, result as an xlsx workbook',
            '/health': 'GET - Health check',
            '/api/info': 'GET - API information'
        }
    })


if __name__ == '__main__':
    port = int(os.environ.get('PORT', 8000))
    debug = os.environ.get('FLASK_ENV') == 'development'
    app_log.info(f"Starting {SERVICE_NAME} on port {port}")
    app.run(debug=debug, host='0.0.0.0', port=port)
