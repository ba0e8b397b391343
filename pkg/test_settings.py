import io
import logging
import os
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest import mock

from cli import EXIT_OK, main
from settings import configure_logging, resolve_format

FILES = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'Files')


class TestFormats(unittest.TestCase):

    def test_explicit_format(self):
        self.assertEqual(resolve_format('json'), 'json')
        with self.assertRaises(ValueError):
            resolve_format('yaml')


class TestLogLevels(unittest.TestCase):

    def setUp(self):
        self.saved_level = logging.getLogger().level

    def tearDown(self):
        configure_logging(logging.getLevelName(self.saved_level))

    def test_explicit_level_beats_the_environment(self):
        with mock.patch.dict(os.environ, {'JETKIT_LOG_LEVEL': 'ERROR'}):
            self.assertEqual(configure_logging('DEBUG').level, logging.DEBUG)
            self.assertEqual(configure_logging().level, logging.ERROR)

    def test_environment_beats_the_default(self):
        with mock.patch.dict(os.environ, {'JETKIT_LOG_LEVEL': 'ERROR'}):
            self.assertEqual(configure_logging(default_level='INFO').level, logging.ERROR)
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(configure_logging(default_level='INFO').level, logging.INFO)

    def test_handler_follows_reconfiguration(self):
        root = configure_logging('WARNING')
        configure_logging('INFO')
        self.assertEqual(root._jetkit_handler.level, logging.INFO)

    def test_verbose_flag_beats_the_environment(self):
        with mock.patch.dict(os.environ, {'JETKIT_LOG_LEVEL': 'ERROR'}):
            with redirect_stdout(io.StringIO()), redirect_stderr(io.StringIO()):
                code = main(['jet-ideal', '--level', '1', '-v', os.path.join(FILES, 'cusp.ideal')])
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(logging.getLogger().level, logging.INFO)
            with redirect_stdout(io.StringIO()), redirect_stderr(io.StringIO()):
                main(['jet-ideal', '--level', '1', os.path.join(FILES, 'cusp.ideal')])
            self.assertEqual(logging.getLogger().level, logging.ERROR)


if __name__ == '__main__':
    unittest.main()
