"""Named canonical objects, resolved against a manifest."""

from __future__ import annotations

from . import chain as ch
from . import sobj as so
from . import ssets as ss
from .config import Manifest
from .errors import SchemaError

NAMES = (
    "sphere:n",
    "disk:n",
    "const:sphere:n",
    "const:disk:n",
    "delta:n",
    "boundary:n",
    "horn:n:k",
    "reedy-sm7",
)


def _int_param(parts, idx, name):
    try:
        return int(parts[idx])
    except (IndexError, ValueError) as e:
        raise SchemaError(f"fixture {name!r}: expected integer parameter") from e


def fixture(name: str, manifest: Manifest):
    """Resolve a fixture name. reedy-sm7 yields the counterexample pair (f, i)."""
    p, N = manifest.p, manifest.trunc
    parts = name.split(":")
    head = parts[0]
    if head == "sphere" and len(parts) == 2:
        return ch.sphere(p, _int_param(parts, 1, name))
    if head == "disk" and len(parts) == 2:
        return ch.disk(p, _int_param(parts, 1, name))
    if head == "const" and len(parts) == 3:
        inner = fixture(f"{parts[1]}:{parts[2]}", manifest)
        if not isinstance(inner, ch.ChainComplex):
            raise SchemaError(f"fixture {name!r}: const needs a chain complex")
        return so.constant(N, inner)
    if head == "delta" and len(parts) == 2:
        n = _int_param(parts, 1, name)
        if not 0 <= n <= N:
            raise SchemaError(f"fixture {name!r}: need 0 <= n <= {N}")
        return ss.delta(N, n)
    if head == "boundary" and len(parts) == 2:
        n = _int_param(parts, 1, name)
        if not 0 <= n <= N:
            raise SchemaError(f"fixture {name!r}: need 0 <= n <= {N}")
        return ss.boundary_inclusion(N, n).source
    if head == "horn" and len(parts) == 3:
        n = _int_param(parts, 1, name)
        k = _int_param(parts, 2, name)
        if not 1 <= n <= N or not 0 <= k <= n:
            raise SchemaError(f"fixture {name!r}: need 1 <= n <= {N} and 0 <= k <= n")
        return ss.horn_inclusion(N, n, k).source
    if name == "reedy-sm7":
        zero = so.constant(N, ch.zero_complex(p))
        target = so.constant(N, ch.sphere(p, 0))
        f = so.zero_smap(zero, target)
        i = ss.horn_inclusion(N, 1, 0)
        return f, i
    raise SchemaError(f"unknown fixture {name!r}; known forms: {', '.join(NAMES)}")
