"""
Run traces: newline-delimited JSON, one header record followed by one
record per tick. Serialization is canonical (sorted keys, compact
separators) so identical runs give identical bytes.
"""
import json

from django.conf import settings


class TraceError(ValueError):
    pass

class SchemaVersionMismatch(TraceError):
    pass

class EmptyTrace(TraceError):
    def __init__(self, message='no records'):
        super().__init__(message)

class CorruptRecord(TraceError):
    def __init__(self, index, reason):
        self.index = index
        super().__init__('corrupt record %d: %s' % (index, reason))

class TruncatedTrace(TraceError):
    def __init__(self, index):
        self.index = index
        super().__init__('trace ends before record %d' % index)


def schema_version():
    return settings.CAM_TRACE['schema_version']


def dumps(record):
    return json.dumps(record, sort_keys=True, separators=(',', ':'), allow_nan=False)


class TraceWriter(object):

    def __init__(self, path):
        self.path = path
        self.records = 0
        self._file = open(path, 'w', encoding='utf-8', newline='\n')

    def write(self, record):
        self._file.write(dumps(record))
        self._file.write('\n')
        self.records += 1

    def close(self):
        self._file.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def parse_lines(lines):
    """
    Validate a sequence of NDJSON lines and return (header, ticks). Record
    indices count the header as record 0.
    """
    header = None
    ticks = []
    for index, line in enumerate(lines):
        if not line.strip():
            raise CorruptRecord(index, 'blank line')
        try:
            record = json.loads(line)
        except ValueError as e:
            raise CorruptRecord(index, str(e))
        if not isinstance(record, dict):
            raise CorruptRecord(index, 'not an object')
        if index == 0:
            if record.get('kind') != 'header':
                raise CorruptRecord(0, 'first record is not a header')
            if record.get('schema_version') != schema_version():
                raise SchemaVersionMismatch('trace schema version %r, expected %r'
                        % (record.get('schema_version'), schema_version()))
            header = record
            continue
        if record.get('kind') != 'tick' or record.get('index') != index - 1:
            raise CorruptRecord(index, 'expected tick %d' % (index - 1))
        ticks.append(record)
    if header is None:
        raise EmptyTrace()
    expected = header.get('tick_count')
    if expected is not None and len(ticks) < expected:
        raise TruncatedTrace(len(ticks) + 1)
    if expected is not None and len(ticks) > expected:
        raise CorruptRecord(expected + 1, 'more ticks than the header declares')
    return header, ticks


def read_trace(path):
    with open(path, encoding='utf-8') as f:
        text = f.read()
    lines = text.splitlines()
    if lines and not text.endswith('\n'):
        # A partially written last line counts as missing
        lines.pop()
    return parse_lines(lines)
