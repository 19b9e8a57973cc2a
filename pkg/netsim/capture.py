"""
.camp capture files: wire frames persisted verbatim, each prefixed by its
u32 little-endian length.
"""
import logging
import struct

from .codec import FrameError, Truncated, decode_frame, encode_frame

logger = logging.getLogger(__name__)

LENGTH = struct.Struct('<I')


class CaptureWriter(object):

    def __init__(self, path):
        self.path = path
        self.frames = 0
        self._file = open(path, 'wb')

    def write(self, message):
        frame = encode_frame(message)
        self._file.write(LENGTH.pack(len(frame)))
        self._file.write(frame)
        self.frames += 1
        return frame

    def close(self):
        self._file.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def iter_frames(path):
    with open(path, 'rb') as f:
        data = f.read()
    offset = 0
    while offset < len(data):
        if len(data) - offset < LENGTH.size:
            raise Truncated()
        (length,) = LENGTH.unpack_from(data, offset)
        offset += LENGTH.size
        if len(data) - offset < length:
            raise Truncated()
        yield data[offset:offset + length]
        offset += length


def read_capture(path, strict=False):
    """
    Decode every frame of a capture file. Frames that fail to decode are
    skipped with a warning unless strict is set.
    """
    messages = []
    for index, frame in enumerate(iter_frames(path)):
        try:
            messages.append(decode_frame(frame))
        except FrameError as e:
            if strict:
                raise
            logger.warning('%s: frame %d rejected: %s', path, index, e)
    return messages
