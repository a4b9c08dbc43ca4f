"""Digital images, continuous self-maps, and approximate fixed points."""

import json

from ._digitop import *  # noqa: F401,F403
from ._digitop import (
    command_decide_afpp as _command_decide_afpp,
    command_find_afp as _command_find_afp,
    image_from_json,
    verify_certificate as _verify_certificate,
)


def image_from_spec(spec):
    """Builds an image from a spec given as a dict or a JSON string."""
    return image_from_json(spec if isinstance(spec, str) else json.dumps(spec))


def decide_afpp_certificate(spec):
    """Returns (certificate dict, exit code) for the decide-afpp command."""
    text, code = _command_decide_afpp(spec if isinstance(spec, str) else json.dumps(spec))
    return json.loads(text), code


def find_afp_certificate(spec, pairs, finder="auto"):
    """Returns (certificate dict, exit code) for the find-afp command."""
    text, code = _command_find_afp(
        spec if isinstance(spec, str) else json.dumps(spec),
        pairs if isinstance(pairs, str) else json.dumps(pairs),
        finder,
    )
    return json.loads(text), code


def check_certificate(cert):
    """Re-verifies a certificate; returns (report dict, exit code)."""
    text, code = _verify_certificate(cert if isinstance(cert, str) else json.dumps(cert))
    return json.loads(text), code
