"""Rainbow tree embeddings in the ND-coloured K_{2n+1} and the cyclic decompositions they give."""

import json

from ._ringel import (
    RingelError,
    canonical_form,
    colour_of,
    enumerate_trees,
    graceful_labelling,
    parse_tree,
    rainbow_embedding,
    verify_rainbow,
    verify_two_factorization,
)
from . import _ringel

__all__ = [
    "RingelError",
    "canonical_form",
    "classify",
    "colour_of",
    "decompose",
    "embed",
    "enumerate_trees",
    "graceful_labelling",
    "parse_tree",
    "rainbow_embedding",
    "sweep",
    "verify",
    "verify_rainbow",
    "verify_two_factorization",
]


def classify(tree_text, delta="0.01"):
    return json.loads(_ringel.cmd_classify(tree_text, delta)[1])


def embed(tree_text, mode="auto", strategy="auto", seed=0, threads=0):
    """Certificate text; its bytes depend only on the tree and the seed."""
    return _ringel.cmd_embed(tree_text, mode, strategy, seed, threads)[1]


def decompose(certificate_text):
    return json.loads(_ringel.cmd_decompose(certificate_text)[1])


def verify(certificate_text):
    return json.loads(_ringel.cmd_verify(certificate_text)[1])


def sweep(max_edges, producer="search", threads=0):
    return json.loads(_ringel.cmd_sweep(max_edges, producer, threads)[1])
