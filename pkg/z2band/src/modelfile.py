"""
Model Files
===========
Reading and writing the declarative tight-binding model format.

Format (UTF-8, '#' starts a comment):

    [lattice]
    dim = 2

    [bands]
    n_bands = 4
    n_occupied = 2

    [theta]
    matrix = 0 1 0 0
             -1 0 0 0
             0 0 0 -1
             0 0 1 0

    [hop]
    displacement = 1 0
    matrix = 0.5 0 -0.5i 0
             ...

Entries are separated by whitespace or commas. A line without '=' continues
the previous key. Complex literals are a, a+bi, a-bi or bi with decimal
a and b.
"""

import logging
import re
from pathlib import Path

import numpy as np

from z2band.src.errors import OddOccupation, ParseError
from z2band.src.models import BlochModel, TightBindingModel

logger = logging.getLogger(__name__)

_DECIMAL = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(
    rf"^(?P<re>[+-]?{_DECIMAL})(?P<im>[+-]{_DECIMAL}i)?$|^(?P<pure>[+-]?{_DECIMAL})i$"
)
_SECTIONS = {"lattice", "bands", "theta", "hop"}


def parse_complex(token: str, line: int | None = None) -> complex:
    """
    Parse one complex literal.

    Example:
        parse_complex("0.5-1.5i") -> (0.5-1.5j)
        parse_complex("-0.5i") -> -0.5j
    """
    match = _COMPLEX.match(token.strip())
    if match is None:
        raise ParseError(f"bad complex literal {token!r}", line)
    if match.group("pure") is not None:
        return complex(0.0, float(match.group("pure")))
    imag = match.group("im")
    return complex(float(match.group("re")), float(imag[:-1]) if imag else 0.0)


def format_complex(value: complex) -> str:
    """Inverse of parse_complex, exact for doubles."""
    return f"{value.real:.17g}{value.imag:+.17g}i"


def _tokens(text: str) -> list:
    return [t for t in re.split(r"[\s,]+", text.strip()) if t]


def _read_blocks(lines: list) -> list:
    """Group lines into (section, {key: (value text, first line)}) blocks."""
    blocks = []
    current = None
    last_key = None
    for number, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        header = re.fullmatch(r"\[(\w+)\]", text)
        if header:
            name = header.group(1).lower()
            if name not in _SECTIONS:
                raise ParseError(f"unknown section [{name}]", number)
            current = (name, {}, number)
            blocks.append(current)
            last_key = None
            continue
        if current is None:
            raise ParseError("content before the first section", number)
        key, sep, value = text.partition("=")
        if sep:
            last_key = key.strip().lower()
            if last_key in current[1]:
                raise ParseError(f"duplicate key {last_key!r}", number)
            current[1][last_key] = [value, number]
        elif last_key is None:
            raise ParseError(f"expected key = value, got {text!r}", number)
        else:
            current[1][last_key][0] += " " + text
    return blocks


def _require(block, key: str):
    name, values, line = block
    if key not in values:
        raise ParseError(f"[{name}] is missing {key!r}", line)
    return values[key]


def _integer(block, key: str) -> int:
    text, line = _require(block, key)
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {text.strip()!r}", line) from None


def _matrix(block, n: int) -> np.ndarray:
    text, line = _require(block, "matrix")
    entries = [parse_complex(t, line) for t in _tokens(text)]
    if len(entries) != n * n:
        raise ParseError(f"matrix has {len(entries)} entries, expected {n * n}", line)
    return np.array(entries, dtype=complex).reshape(n, n)


def parse_model_text(text: str, name: str = "model") -> TightBindingModel:
    """
    Parse model-file text into a TightBindingModel.

    Raises:
        ParseError, HermiticityViolation, OddOccupation
    """
    blocks = _read_blocks(text.splitlines())
    singles = {}
    hops = []
    for block in blocks:
        if block[0] == "hop":
            hops.append(block)
        elif block[0] in singles:
            raise ParseError(f"section [{block[0]}] appears twice", block[2])
        else:
            singles[block[0]] = block
    for section in ("lattice", "bands", "theta"):
        if section not in singles:
            raise ParseError(f"missing section [{section}]")

    dim = _integer(singles["lattice"], "dim")
    if dim not in (1, 2, 3):
        raise ParseError(f"dim must be 1, 2 or 3, got {dim}", singles["lattice"][2])
    n_bands = _integer(singles["bands"], "n_bands")
    n_occupied = _integer(singles["bands"], "n_occupied")
    if n_bands <= 0 or not 0 < n_occupied <= n_bands:
        raise ParseError(f"need 0 < n_occupied <= n_bands, got {n_occupied}/{n_bands}",
                         singles["bands"][2])
    if n_bands % 2 or n_occupied % 2:
        raise OddOccupation(f"n_bands and n_occupied must be even, got {n_bands}/{n_occupied}")
    theta = _matrix(singles["theta"], n_bands)

    hoppings = {}
    for block in hops:
        text, line = _require(block, "displacement")
        try:
            displacement = tuple(int(t) for t in _tokens(text))
        except ValueError:
            raise ParseError(f"displacement must be integers, got {text.strip()!r}", line) from None
        if len(displacement) != dim:
            raise ParseError(f"displacement {displacement} needs {dim} components", line)
        if displacement in hoppings:
            raise ParseError(f"displacement {displacement} given twice", line)
        hoppings[displacement] = _matrix(block, n_bands)
    if not hoppings:
        raise ParseError("no [hop] blocks")

    return TightBindingModel(dim, n_bands, n_occupied, hoppings, theta, name=name)


def load_model_spec(path) -> BlochModel:
    """
    Load a model file.

    Raises:
        ParseError: syntax errors (with line numbers) or unreadable file
        HermiticityViolation: T_{-R} missing or inconsistent
        ThetaInvalid: Theta not unitary or Theta^2 != -1
        OddOccupation: odd band or occupation counts
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    model = parse_model_text(text, name=path.stem).to_model()
    logger.info("loaded %s: dim=%d, %d bands, %d occupied, %d hoppings", path,
                model.dim_k, model.n_bands, model.n_occupied, len(model.tight_binding.hoppings))
    return model


def model_to_text(model: TightBindingModel) -> str:
    """Serialize a TightBindingModel into the model-file format."""
    n = model.n_bands

    def rows(matrix):
        lines = [" ".join(format_complex(v) for v in row) for row in matrix]
        return ("\n" + " " * 9).join(lines)

    out = [
        f"# {model.name}",
        "[lattice]",
        f"dim = {model.dim}",
        "",
        "[bands]",
        f"n_bands = {n}",
        f"n_occupied = {model.n_occupied}",
        "",
        "[theta]",
        "matrix = " + rows(model.theta),
    ]
    for r in sorted(model.hoppings):
        out += ["", "[hop]", "displacement = " + " ".join(str(x) for x in r),
                "matrix = " + rows(model.hoppings[r])]
    return "\n".join(out) + "\n"


def write_model_spec(model: TightBindingModel, path) -> None:
    """Write a TightBindingModel (with Theta) to a model file."""
    if model.theta is None:
        raise ValueError("model files require a Theta operator")
    Path(path).write_text(model_to_text(model), encoding="utf-8")
