# boot_gyrofuzz.py
#
# Configures gyrofuzz settings and logging for scripts and the test runner.
import logging

from gyrofuzz.conf import settings


def boot_gyrofuzz(**overrides):
    from gyrofuzz import testsettings

    options = dict(testsettings.SETTINGS)
    options.update(overrides)
    settings.reset()
    settings.configure(**options)
    logging.basicConfig(level=options["LOG_LEVEL"])
