#!/usr/bin/env python3
"""Independent structure oracle: definitions and adjacency from Python's ast.

Walks a repository, lists every function/class definition (decorator-extended
spans, dotted names, duplicate ids suffixed #2, #3...) and derives
contains/invokes edges using the documented resolution rules (same-file
preference, repo-wide fallback, 3-candidate cap, self-edges excluded, contains
wins over invokes).  Definition data comes purely from ast, so it cross-checks
the engine's hand-written parser and call scanner.

Usage: ast_dump.py <root> [--ignore dir,dir,...]
Prints a deterministic JSON document to stdout.
"""

import ast
import json
import sys
from pathlib import Path


def collect_files(root, ignored):
    out = []
    for p in sorted(root.rglob("*.py")):
        rel = p.relative_to(root)
        if any(part in ignored for part in rel.parts[:-1]):
            continue
        if p.is_symlink():
            continue
        out.append(rel.as_posix())
    return out


class Def:
    def __init__(self, path, qualified, kind, start, end, header):
        self.path = path
        self.qualified = qualified
        self.kind = kind
        self.start = start
        self.end = end
        self.header = header
        self.id = None
        self.parent_id = None


def walk_defs(tree, path):
    """Document-order definition list with dotted names."""
    defs = []

    def visit(node, prefix, parent_index):
        for child in ast.iter_child_nodes(node):
            if isinstance(child, (ast.FunctionDef, ast.AsyncFunctionDef, ast.ClassDef)):
                name = prefix + child.name if prefix else child.name
                start = child.lineno
                for deco in child.decorator_list:
                    start = min(start, deco.lineno)
                kind = "class" if isinstance(child, ast.ClassDef) else "function"
                d = Def(path, name, kind, start, child.end_lineno, child.lineno)
                d.parent_index = parent_index
                defs.append(d)
                visit(child, name + ".", len(defs) - 1)
            else:
                visit(child, prefix, parent_index)

    visit(tree, "", None)
    return defs


def collect_calls(tree):
    """(line, col, last-component name) for every call outside f-strings."""
    calls = []

    def visit(node, in_fstring):
        if isinstance(node, ast.JoinedStr):
            in_fstring = True
        if isinstance(node, ast.Call) and not in_fstring:
            func = node.func
            name = None
            if isinstance(func, ast.Name):
                name = func.id
            elif isinstance(func, ast.Attribute):
                name = func.attr
            if name:
                calls.append((node.lineno, node.col_offset, name))
        for child in ast.iter_child_nodes(node):
            visit(child, in_fstring)

    visit(tree, False)
    return calls


def main():
    root = Path(sys.argv[1])
    ignored = {".git", "__pycache__"}
    args = sys.argv[2:]
    while args:
        if args[0] == "--ignore":
            ignored = set(args[1].split(","))
            args = args[2:]
        else:
            raise SystemExit("unknown argument: " + args[0])

    all_defs = []
    calls_by_file = {}
    diagnostics = []
    for rel in collect_files(root, ignored):
        source = (root / rel).read_text()
        try:
            tree = ast.parse(source)
        except SyntaxError as exc:
            diagnostics.append({"path": rel, "message": str(exc.msg)})
            continue
        defs = walk_defs(tree, rel)
        seen = {}
        for d in defs:
            n = seen.get(d.qualified, 0) + 1
            seen[d.qualified] = n
            d.id = f"{rel}:{d.qualified}" + (f"#{n}" if n > 1 else "")
        for d in defs:
            if d.parent_index is not None:
                d.parent_id = defs[d.parent_index].id
        all_defs.extend(defs)
        calls_by_file[rel] = collect_calls(tree)

    by_id = {d.id: d for d in all_defs}
    by_last = {}
    for d in all_defs:
        by_last.setdefault(d.qualified.split(".")[-1], []).append(d)

    edges = set()
    for d in all_defs:
        if d.parent_id:
            edges.add((d.parent_id, d.id, "contains"))

    contains_children = {}
    for p, c, _ in edges:
        contains_children.setdefault(p, set()).add(c)

    # innermost containing definition per call line
    defs_by_file = {}
    for d in all_defs:
        defs_by_file.setdefault(d.path, []).append(d)
    for rel, calls in calls_by_file.items():
        file_defs = defs_by_file.get(rel, [])
        names_per_def = {}
        for line, _col, name in calls:
            inner = None
            for d in file_defs:
                if d.start <= line <= d.end:
                    if inner is None or (d.start, -d.end) > (inner.start, -inner.end):
                        inner = d
            if inner is None:
                continue  # module-level call: chunks carry no invokes edges
            names_per_def.setdefault(inner.id, set()).add(name)
        for caller_id, names in names_per_def.items():
            for name in sorted(names):
                cands = by_last.get(name, [])
                same = [t for t in cands if t.path == rel and t.id != caller_id]
                pool = same if same else [t for t in cands if t.id != caller_id]
                pool = sorted(pool, key=lambda t: (t.path, t.start, t.id))[:3]
                for t in pool:
                    if t.id in contains_children.get(caller_id, set()):
                        continue
                    edges.add((caller_id, t.id, "invokes"))

    doc = {
        "units": [
            {
                "id": d.id,
                "kind": d.kind,
                "name": d.qualified,
                "path": d.path,
                "start_line": d.start,
                "end_line": d.end,
            }
            for d in sorted(all_defs, key=lambda d: (d.path, d.start, d.id))
        ],
        "edges": [
            {"parent": p, "child": c, "kind": k}
            for p, c, k in sorted(edges)
        ],
        "diagnostics": sorted(diagnostics, key=lambda x: x["path"]),
    }
    print(json.dumps(doc, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
