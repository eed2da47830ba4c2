"""Config file loading for the demo service."""

from models import Config
from util import normalize


def parse_config(path):
    cfg = Config()
    cfg.data = {}
    for raw in read_file(path).splitlines():
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        key, _, value = line.partition('=')
        node = cfg.data
        parts = resolve_path(key)
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = normalize(value)
    return cfg


def resolve_path(key):
    return key.strip().split('/')


def read_file(path):
    with open(path) as fh:
        return fh.read()
