"""Definitions interleaved with module-level code (chunk gaps)."""

import json

SETTINGS = {
    'retries': 3,
    'verbose': False,
}


def load(path):
    with open(path) as fh:
        return json.load(fh)


CACHE = {}


def cached_load(path):
    if path not in CACHE:
        CACHE[path] = load(path)
    return CACHE[path]


if __name__ == '__main__':
    print(cached_load('settings.json'))
