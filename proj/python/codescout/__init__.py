"""Python facade over the native engine: indexing, localization, resolution,
and the evaluation harness.  The native module exchanges JSON strings; this
wrapper parses them so callers work with plain dicts."""

import json

try:
    from . import _codescout as _native
except ImportError:  # development layout: the module sits on sys.path (build tree)
    import _codescout as _native

__all__ = [
    "index_repository",
    "locate",
    "resolve",
    "evaluate",
    "replay",
    "report",
    "acc_at_k",
    "resolve_rate",
    "default_config",
    "EngineError",
]

EngineError = RuntimeError


def _config_arg(config):
    if config is None:
        return ""
    if isinstance(config, str):
        return config
    return json.dumps(config)


def index_repository(root, config=None):
    """Index a repository; returns the {version, root, units, diagnostics} dict."""
    return json.loads(_native.index_repository(str(root), _config_arg(config)))


def locate(root, issue, transcript_path, instance_id="local", repo_name="", config=None):
    """Run scripted localization; returns {instance_id, locations, trajectory}."""
    return json.loads(
        _native.locate(str(root), issue, str(transcript_path), instance_id, repo_name,
                       _config_arg(config))
    )


def resolve(workspace, issue, transcript_path, instance_id="local", registry_dir="",
            hints=None, config=None):
    """Run scripted resolution in a git workspace; returns the outcome dict
    (submission diff, trajectory, behavior flags)."""
    hints_json = "" if hints is None else json.dumps(hints)
    return json.loads(
        _native.resolve(str(workspace), issue, str(transcript_path), instance_id,
                        str(registry_dir), hints_json, _config_arg(config))
    )


def evaluate(spec_paths, config=None):
    """Run instance specs end to end; returns the evaluation report dict."""
    return json.loads(_native.evaluate([str(p) for p in spec_paths], _config_arg(config)))


def replay(spec_paths, baseline, config=None):
    """Re-run specs and byte-compare against a baseline report dict;
    returns {identical, divergence}."""
    return json.loads(
        _native.replay([str(p) for p in spec_paths], json.dumps(baseline),
                       _config_arg(config))
    )


def report(records, config=None):
    """Recompute metrics and analytics from stored records (a list of record
    dicts or a report dict); returns the report dict."""
    return json.loads(_native.report(json.dumps(records), _config_arg(config)))


def acc_at_k(records, k, level="file", exclude_empty_function_gold=True):
    """Accuracy@k over record dicts at 'file' or 'function' level."""
    return _native.acc_at_k(json.dumps(records), k, level, exclude_empty_function_gold)


def resolve_rate(records):
    """Resolve rate over record dicts; returns (rate, warnings)."""
    return _native.resolve_rate(json.dumps(records))


def default_config():
    """The engine's default configuration as a dict."""
    return json.loads(_native.default_config())
