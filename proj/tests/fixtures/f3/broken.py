"""This file is deliberately broken."""

def works():
    return 1

DOC = """unterminated
