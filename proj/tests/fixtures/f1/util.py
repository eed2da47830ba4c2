"""Small shared helpers."""


def normalize(value):
    value = value.strip()
    lowered = value.lower()
    if lowered in ('true', 'false'):
        return lowered == 'true'
    if value.isdigit():
        return int(value)
    return value
