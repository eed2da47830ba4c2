"""Parser edge cases: multi-line headers, one-liners, tricky strings."""

BANNER = """
def not_a_function():
    pass
"""

TEMPLATE = 'def also_not_one(): ...'


def wide_signature(
    first,
    second,
    *,
    keyword=None,
) -> dict:
    """Return the pair plus options."""
    return {'first': first, 'second': second, 'keyword': keyword}


def one_liner(x): return x + 1


class Compact:
    def a(self): return 1
    def b(self): return self.a() + 1


def trailing_expression():
    value = (
        1 +
        2
    )
    return value
