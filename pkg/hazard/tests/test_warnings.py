import os
import tempfile

from django.test import SimpleTestCase

from hazard.conflicts import ConflictEvent
from hazard.warnings import Dispatcher, Subscriber, SubscriberKind, warning_for
from netsim.capture import CaptureWriter, read_capture
from netsim.links import DeliveryQueue, LinkProfile


class DispatchTestCase(SimpleTestCase):

    def setUp(self):
        self.links = {
                'urllc': LinkProfile.from_settings('urllc', loss_probability=0.0),
                'dead': LinkProfile('dead', 1000, loss_probability=1.0),
                }
        self.queue = DeliveryQueue()
        self.event = ConflictEvent(event_id=4, track_a=1, track_b=2, time_to_conflict=3.0,
                min_distance=0.5, issued_at=2000000, conflict_at=5000000)

    def test_no_subscribers(self):
        self.assertEqual(Dispatcher(self.links, self.queue, seed=1).dispatch(self.event, [], 2000000), [])
        self.assertEqual(self.queue.sent, 0)

    def test_two_subscribers_on_urllc(self):
        subscribers = [Subscriber(1, SubscriberKind.CONNECTED_VEHICLE, 'urllc'),
                Subscriber(2, SubscriberKind.PHONE_APP, 'urllc')]
        sent = Dispatcher(self.links, self.queue, seed=1).dispatch(self.event, subscribers, 2000000)
        self.assertEqual(len(sent), 2)
        for transit in sent:
            self.assertFalse(transit.dropped)
            self.assertGreaterEqual(transit.delivery_time, 2000800)
            self.assertLessEqual(transit.delivery_time, 2001200)
        delivered = self.queue.poll(2001200)
        self.assertEqual(sorted(t.message.subscriber_id for t in delivered), [1, 2])
        self.assertEqual(delivered[0].message.event_id, 4)

    def test_dead_link_loses_the_warning(self):
        subscribers = [Subscriber(9, SubscriberKind.PHONE_APP, 'dead')]
        sent = Dispatcher(self.links, self.queue, seed=1).dispatch(self.event, subscribers, 2000000)
        self.assertTrue(sent[0].dropped)
        self.assertEqual(self.queue.dropped, 1)
        self.assertEqual(self.queue.poll(10 ** 9), [])

    def test_same_seed_same_schedule(self):
        subscribers = [Subscriber(i, SubscriberKind.PHONE_APP, 'urllc') for i in range(5)]
        first = Dispatcher(self.links, DeliveryQueue(), seed=7).dispatch(self.event, subscribers, 0)
        second = Dispatcher(self.links, DeliveryQueue(), seed=7).dispatch(self.event, subscribers, 0)
        self.assertEqual([t.delivery_time for t in first], [t.delivery_time for t in second])

    def test_warnings_are_captured(self):
        subscribers = [Subscriber(3, SubscriberKind.CONNECTED_VEHICLE, 'urllc')]
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'warnings.camp')
            with CaptureWriter(path) as capture:
                Dispatcher(self.links, self.queue, seed=1, capture=capture).dispatch(self.event, subscribers, 0)
            self.assertEqual(read_capture(path), [warning_for(self.event, subscribers[0])])
