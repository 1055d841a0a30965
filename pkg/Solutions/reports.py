"""Writing and reading the files the commands produce."""
import csv
import io
import logging
from datetime import datetime

import pytz
from django.template.loader import render_to_string
from rest_framework.exceptions import ParseError as JSONParseError
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from .exceptions import MalformedLayout
from .metrics import render_percent
from .serializers import NormalizedRowSerializer

logger = logging.getLogger(__name__)

SUGGESTIONS_TEMPLATE = 'Solutions/suggestions.md'


def format_timestamp(seconds):
    return datetime.fromtimestamp(seconds, tz=pytz.UTC).strftime('%Y-%m-%dT%H:%M:%SZ')


def _prepare(path):
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_json(path, data):
    content = JSONRenderer().render(data, renderer_context={'indent': 2})
    _prepare(path).write_bytes(content + b'\n')


def write_jsonl(path, rows):
    renderer = JSONRenderer()
    with open(_prepare(path), 'wb') as handle:
        for row in rows:
            handle.write(renderer.render(row) + b'\n')


def read_jsonl(path):
    """Rows of a JSONL file, validated as normalized-program rows."""
    parser = JSONParser()
    rows = []
    with open(path, 'rb') as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                data = parser.parse(io.BytesIO(line))
            except JSONParseError as exc:
                raise MalformedLayout('{} line {}: {}'.format(path, number, exc.detail)) from exc
            serializer = NormalizedRowSerializer(data=data)
            if not serializer.is_valid():
                raise MalformedLayout('{} line {}: {}'.format(path, number, serializer.errors))
            rows.append(serializer.validated_data)
    return rows


def write_csv(path, header, rows):
    with open(_prepare(path), 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)


def _variant_names(identifier_map):
    return ', '.join('{}={}'.format(placeholder, original) for placeholder, original in identifier_map)


def render_suggestions(problem_id, suggestions, groups, n_solutions, verifications=None, baseline=False):
    """Markdown for one problem. ``groups`` are the problem's UniquePrograms."""
    verifications = verifications or {}
    earliest = {group.normalized_text: group.earliest_submission for group in groups}
    items = [{
        'suggestion': suggestion,
        'coverage': render_percent(suggestion.coverage_share),
        'first_submitted': format_timestamp(earliest[suggestion.normalized_text]),
        'verification': verifications.get(suggestion.rank),
        'variants': [{'count': count, 'names': _variant_names(identifier_map)}
                     for identifier_map, count in suggestion.identifier_variants],
    } for suggestion in suggestions]
    return render_to_string(SUGGESTIONS_TEMPLATE, {
        'problem_id': problem_id,
        'n_solutions': n_solutions,
        'n_unique': len(groups),
        'baseline': baseline,
        'suggestions': items,
    })


def write_text(path, text):
    _prepare(path).write_text(text, encoding='utf-8')
