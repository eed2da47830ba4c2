import os
import tempfile
import unittest

from config import parse_config


class ConfigTest(unittest.TestCase):
    def _load(self, text):
        fd, path = tempfile.mkstemp()
        try:
            with os.fdopen(fd, 'w') as fh:
                fh.write(text)
            return parse_config(path)
        finally:
            os.unlink(path)

    def test_dotted_keys_nest(self):
        cfg = self._load("# demo\ndb.host=localhost\ndb.port=5432\nverbose=true\n")
        self.assertEqual(cfg.get('db'), {'host': 'localhost', 'port': 5432})
        self.assertEqual(cfg.get('db.host'), 'localhost')
        self.assertEqual(cfg.get('db.port'), 5432)
        self.assertIs(cfg.get('verbose'), True)

    def test_missing_key_falls_back(self):
        cfg = self._load("name=svc\n")
        self.assertIsNone(cfg.get('absent'))
        self.assertEqual(cfg.get('absent.deep', 'x'), 'x')


if __name__ == '__main__':
    unittest.main()
