"""Vagueness scoring and CAM bias classification."""

import json
import os

from ._vaguecam import Error, Model, default_lexicon_dir, detect_language, gradcheck
from . import _vaguecam

__all__ = [
    "Error",
    "Model",
    "analyze",
    "detect_language",
    "generate_corpus",
    "gradcheck",
    "lexicon_path",
]


def lexicon_path(lang="EN"):
    """Path of the bundled seed lexicon for `lang`."""
    name = "seed.en.tsv" if lang.upper() == "EN" else "seed.fr.tsv"
    if "VAGO_LEXICON_DIR" in os.environ:
        return os.path.join(os.environ["VAGO_LEXICON_DIR"], name)
    bundled = os.path.join(os.path.dirname(__file__), "data", "lexicon", name)
    if os.path.exists(bundled):
        return bundled
    return os.path.join(default_lexicon_dir(), name)


def analyze(text, lang=None, lexicon=None, count_punctuation=False, per_occurrence=True):
    """Score `text`; returns the report as a dict."""
    if lexicon is None:
        if lang is None:
            lang = detect_language(text)[0]
        lexicon = lexicon_path(lang)
    return json.loads(_vaguecam.analyze(text, lexicon, count_punctuation, per_occurrence))


def generate_corpus(n_docs=2000, bias_fraction=0.5, seed=42, lexicon=None, lexicon_fraction=0.5):
    """Synthetic labelled corpus; returns (jsonl, manifest dict)."""
    jsonl, manifest = _vaguecam.generate_corpus(
        n_docs, bias_fraction, seed, lexicon or lexicon_path("EN"), lexicon_fraction
    )
    return jsonl, json.loads(manifest)
