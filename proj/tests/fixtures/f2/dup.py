"""Deliberate name shadowing for id-disambiguation checks."""


def compute(values):
    return sum(values)


def compute(values):
    # later definition shadows the first at import time
    return max(values) if values else 0


def use_both(values):
    return compute(values)
