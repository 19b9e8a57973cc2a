import os
import tempfile

from django.test import SimpleTestCase

from netsim.capture import CaptureWriter, iter_frames, read_capture
from netsim.codec import (BadMagic, ObjectRecord, PerceptionMessage, Truncated,
        WarningMessage, encode)


class CaptureFileTestCase(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.tmp.name, 'run.camp')
        self.messages = [
                PerceptionMessage(1, 0, 0, ()),
                PerceptionMessage(2, 5, 100000, (ObjectRecord(0, 2, 1.5, 2.5, 0.25),)),
                WarningMessage(1, 1, 3, 4, 2.0, 0.5, 100000),
                ]

    def tearDown(self):
        self.tmp.cleanup()

    def test_frames_are_written_verbatim(self):
        with CaptureWriter(self.path) as writer:
            frames = [writer.write(m) for m in self.messages]
        self.assertEqual(writer.frames, 3)
        self.assertEqual(list(iter_frames(self.path)), frames)
        self.assertEqual(frames[1], encode(self.messages[1]))
        self.assertEqual(os.path.getsize(self.path), sum(len(f) + 4 for f in frames))

    def test_read_back(self):
        with CaptureWriter(self.path) as writer:
            for m in self.messages:
                writer.write(m)
        self.assertEqual(read_capture(self.path), self.messages)

    def test_bad_frame_is_skipped(self):
        with CaptureWriter(self.path) as writer:
            for m in self.messages:
                writer.write(m)
        with open(self.path, 'r+b') as f:
            f.seek(4)
            f.write(b'X')
        with self.assertLogs('netsim.capture', 'WARNING'):
            messages = read_capture(self.path)
        self.assertEqual(messages, self.messages[1:])
        with self.assertRaises(BadMagic):
            read_capture(self.path, strict=True)

    def test_truncated_file(self):
        with CaptureWriter(self.path) as writer:
            writer.write(self.messages[1])
        with open(self.path, 'r+b') as f:
            f.truncate(os.path.getsize(self.path) - 3)
        with self.assertRaises(Truncated):
            read_capture(self.path)
