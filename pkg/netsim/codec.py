"""
Bit-exact wire format for perception and warning frames.

Perception frame (little-endian):
    "CAMP" | version u8 | node_id u16 | seq u32 | capture_time u64 | count u16
    followed by count records of
    object_index u32 | class_code u8 | x f64 | y f64 | sigma f32

Warning frame:
    "CAMW" | version u8 | subscriber_id u16 | event_id u32 | track_a u64
    | track_b u64 | time_to_conflict f64 | min_distance f64 | issued_at u64
"""
import struct
from dataclasses import dataclass
from typing import Tuple

import numpy as np

PERCEPTION_MAGIC = b'CAMP'
WARNING_MAGIC = b'CAMW'
VERSION = 0x01
MAX_RECORDS = 0xFFFF
SEQ_MODULUS = 2 ** 32

HEADER = struct.Struct('<4sBHIQH')
RECORD = struct.Struct('<IBddf')
WARNING = struct.Struct('<4sBHIQQddQ')


class FrameError(ValueError):
    pass

class BadMagic(FrameError):
    pass

class UnsupportedVersion(FrameError):
    pass

class Truncated(FrameError):
    def __init__(self, message='unexpected end of frame'):
        super().__init__(message)

class TrailingBytes(FrameError):
    pass

class CountOverflow(FrameError):
    pass


def f32(value):
    """Round a float to the nearest 32-bit float, as stored on the wire."""
    return float(np.float32(value))


@dataclass(frozen=True)
class ObjectRecord:
    object_index: int
    class_code: int
    x: float
    y: float
    sigma: float


@dataclass(frozen=True)
class PerceptionMessage:
    node_id: int
    seq: int
    capture_time: int
    records: Tuple[ObjectRecord, ...] = ()

    @property
    def count(self):
        return len(self.records)


@dataclass(frozen=True)
class WarningMessage:
    subscriber_id: int
    event_id: int
    track_a: int
    track_b: int
    time_to_conflict: float
    min_distance: float
    issued_at: int


def frame_length(count):
    return HEADER.size + RECORD.size * count


def seq_next(seq):
    return (seq + 1) % SEQ_MODULUS

def seq_newer(a, b):
    """Serial-number comparison: True if seq a was issued after seq b."""
    delta = (a - b) % SEQ_MODULUS
    return 0 < delta < SEQ_MODULUS // 2


def encode(message):
    if message.count > MAX_RECORDS:
        raise CountOverflow('%d records exceed the count field (max %d)' % (message.count, MAX_RECORDS))
    parts = []
    try:
        parts.append(HEADER.pack(PERCEPTION_MAGIC, VERSION, message.node_id,
                message.seq, message.capture_time, message.count))
        for record in message.records:
            parts.append(RECORD.pack(record.object_index, record.class_code,
                record.x, record.y, record.sigma))
    except struct.error as e:
        raise FrameError('cannot encode message: %s' % e)
    return b''.join(parts)


def _check_prefix(data, magic):
    if len(data) < 4:
        if magic.startswith(bytes(data)):
            raise Truncated()
        raise BadMagic('bad magic %r' % bytes(data))
    if bytes(data[:4]) != magic:
        raise BadMagic('bad magic %r' % bytes(data[:4]))
    if len(data) < 5:
        raise Truncated()
    if data[4] != VERSION:
        raise UnsupportedVersion('unsupported frame version %d' % data[4])


def decode(data):
    data = memoryview(bytes(data))
    _check_prefix(data, PERCEPTION_MAGIC)
    if len(data) < HEADER.size:
        raise Truncated()
    _, _, node_id, seq, capture_time, count = HEADER.unpack_from(data, 0)
    expected = frame_length(count)
    if len(data) < expected:
        raise Truncated()
    if len(data) > expected:
        raise TrailingBytes('%d stray byte(s) after frame' % (len(data) - expected))
    records = tuple(ObjectRecord(*RECORD.unpack_from(data, HEADER.size + i * RECORD.size))
            for i in range(count))
    return PerceptionMessage(node_id, seq, capture_time, records)


def encode_warning(message):
    try:
        return WARNING.pack(WARNING_MAGIC, VERSION, message.subscriber_id,
                message.event_id, message.track_a, message.track_b,
                message.time_to_conflict, message.min_distance, message.issued_at)
    except struct.error as e:
        raise FrameError('cannot encode warning: %s' % e)


def decode_warning(data):
    data = memoryview(bytes(data))
    _check_prefix(data, WARNING_MAGIC)
    if len(data) < WARNING.size:
        raise Truncated()
    if len(data) > WARNING.size:
        raise TrailingBytes('%d stray byte(s) after frame' % (len(data) - WARNING.size))
    return WarningMessage(*WARNING.unpack(data)[2:])


def encode_frame(message):
    if isinstance(message, WarningMessage):
        return encode_warning(message)
    return encode(message)


def decode_frame(data):
    """Decode either frame type, dispatching on the magic."""
    if bytes(data[:4]) == WARNING_MAGIC:
        return decode_warning(data)
    return decode(data)
