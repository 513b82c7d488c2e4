from unittest import TestCase

from gyrofuzz import testsettings
from gyrofuzz.conf import settings


class GyrofuzzTestCase(TestCase):
    """Runs every test under the sample counts of ``testsettings``."""

    def setUp(self):
        override = settings.override(**testsettings.SETTINGS)
        override.__enter__()
        self.addCleanup(override.__exit__, None, None, None)
