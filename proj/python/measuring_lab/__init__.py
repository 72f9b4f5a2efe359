"""Python bindings for the measuring lab. Structures are plain dicts in the JSON file format."""

import json

from . import _core

Error = _core.Error


def _s(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def check(doc, base=""):
    return json.loads(_core.check(_s(doc), base))


def dual(doc):
    return json.loads(_core.dual(_s(doc)))


def standard(name, field, n=0):
    return json.loads(_core.standard(name, field, n))


def convolution(c, a):
    return json.loads(_core.convolution(_s(c), _s(a)))


def pab(a, b, degree=2):
    return json.loads(_core.pab(_s(a), _s(b), degree))


def census(a, b, c, degree=2):
    return json.loads(_core.census(_s(a), _s(b), _s(c), degree))


def isocomod(a, b, v_dim, n, degree=2):
    return json.loads(_core.isocomod(_s(a), _s(b), v_dim, _s(n), degree))


def fib_corpus():
    return [json.loads(s) for s in _core.fib_corpus()]


def fib_synthesize(instance):
    return json.loads(_core.fib_synthesize(_s(instance)))


def hopf_lift(doc, degree=2):
    return json.loads(_core.hopf_lift(_s(doc), degree))


__all__ = ["Error", "check", "dual", "standard", "convolution", "pab", "census", "isocomod", "fib_corpus",
           "fib_synthesize", "hopf_lift"]
