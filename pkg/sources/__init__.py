"""
Fetch and decode fixture documents (worlds, rulesets, skills, transcripts, manifests).

Documents may be local paths, file:// paths or http(s) URLs, optionally
gzip-compressed. `.json` documents parse with json, anything else with
yaml.safe_load (which also accepts JSON).
"""

import gzip
import json
import os

import requests
import yaml

from model import ConfigError


def fetch_content(url, binary=False):
    """
    Fetch content from URL or local file.

    Args:
        url: HTTP(S) URL, file:// URL or plain path
        binary: Whether to return binary content

    Returns:
        Content as bytes (binary=True) or string (binary=False)
    """
    if url.startswith('http://') or url.startswith('https://'):
        response = requests.get(url, timeout=30)
        response.raise_for_status()
        return response.content if binary else response.text

    file_path = url[7:] if url.startswith('file://') else url
    mode = 'rb' if binary else 'r'
    encoding = None if binary else 'utf-8'
    with open(file_path, mode, encoding=encoding) as f:
        return f.read()


def decompress_content(content, compression):
    """
    Decompress content based on compression type ('gzip' or 'none').
    """
    if compression == 'gzip':
        return gzip.decompress(content).decode('utf-8')
    elif compression == 'none':
        return content
    else:
        raise ConfigError(f"Unknown compression type: {compression}")


def guess_compression(url):
    return 'gzip' if url.endswith('.gz') else 'none'


def _is_json(url):
    return url.endswith(".json") or url.endswith(".json.gz")


def resolve(path, base_dir=None):
    """Resolve a relative fixture path against base_dir; URLs pass through."""
    if not isinstance(path, str) or not path:
        raise ConfigError(f"Fixture path must be a non-empty string. Received: '{path}'")
    if '://' in path or os.path.isabs(path) or base_dir is None:
        return path
    return os.path.join(base_dir, path)


def load_document(url, compression=None):
    """
    Load and parse a JSON/YAML document.

    Raises:
        ConfigError if the document cannot be read or parsed.
    """
    compression = compression or guess_compression(url)
    try:
        content = fetch_content(url, binary=(compression == 'gzip'))
        text = decompress_content(content, compression)
        if _is_json(url):
            return json.loads(text)
        return yaml.safe_load(text)
    except (OSError, requests.RequestException) as e:
        raise ConfigError(f"Could not read '{url}': {e}") from e
    except (ValueError, yaml.YAMLError) as e:
        raise ConfigError(f"Could not parse '{url}': {e}") from e


def package_path(*parts):
    """Absolute path of a file shipped inside the repository."""
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    return os.path.join(root, *parts)
