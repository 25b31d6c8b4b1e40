"""JSON input documents: ring, optional variety ideal, forms and options."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .field import Field
from .groebner import DEFAULT_BUDGET, Budget
from .parse import ParseError, parse_polynomial
from .poly import PolyRing
from .rees import MapSpecError, RationalMapSpec


class InputError(ValueError):
    """The input document is malformed (reported with exit status 2)."""


OPTION_KEYS = ("trials", "seed", "points", "factorial", "y_degree_cap", "budget")


@dataclass
class Options:
    trials: int = 5
    seed: int = 42
    points: list | None = None
    factorial: bool = False
    y_degree_cap: int | None = None
    budget: Budget = DEFAULT_BUDGET

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "points": self.points,
            "factorial": self.factorial,
            "y_degree_cap": self.y_degree_cap,
            "budget": {"max_pairs": self.budget.max_pairs, "max_degree": self.budget.max_degree},
        }


@dataclass
class InputDocument:
    variables: list
    characteristic: int
    forms: list
    variety_ideal: list = field(default_factory=list)
    options: Options = field(default_factory=Options)
    name: str | None = None

    def ring(self) -> PolyRing:
        return PolyRing(self.variables, Field(self.characteristic))

    def to_spec(self) -> RationalMapSpec:
        try:
            ring = self.ring()
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        forms = [_parse(t, ring, "map.forms") for t in self.forms]
        P = [_parse(t, ring, "variety_ideal") for t in self.variety_ideal]
        try:
            return RationalMapSpec(ring, forms, P or None, self.options.budget, self.options.factorial)
        except MapSpecError as exc:
            raise InputError(str(exc)) from exc

    def with_overrides(self, characteristic=None, seed=None, trials=None, budget=None) -> "InputDocument":
        opts = Options(**{k: getattr(self.options, k) for k in OPTION_KEYS})
        if seed is not None:
            opts.seed = seed
        if trials is not None:
            opts.trials = trials
        if budget is not None:
            opts.budget = budget
        char = self.characteristic if characteristic is None else characteristic
        return InputDocument(self.variables, char, self.forms, self.variety_ideal, opts, self.name)

    def as_json(self) -> dict:
        out = {
            "ring": {"variables": list(self.variables), "characteristic": self.characteristic},
            "variety_ideal": list(self.variety_ideal),
            "map": {"forms": list(self.forms)},
            "options": {"trials": self.options.trials, "seed": self.options.seed},
        }
        if self.options.points:
            out["options"]["points"] = self.options.points
        if self.options.factorial:
            out["options"]["factorial"] = True
        if self.options.y_degree_cap is not None:
            out["options"]["y_degree_cap"] = self.options.y_degree_cap
        return out


def _parse(text, ring, where):
    if not isinstance(text, str):
        raise InputError(f"{where}: expected a polynomial string, got {text!r}")
    try:
        return parse_polynomial(text, ring)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc.message}", exc.position, exc.text) from exc


def _int(value, key, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"options.{key} must be an integer")
    if minimum is not None and value < minimum:
        raise InputError(f"options.{key} must be at least {minimum}")
    return value


def parse_options(raw: dict | None) -> Options:
    raw = raw or {}
    if not isinstance(raw, dict):
        raise InputError("options must be an object")
    unknown = sorted(set(raw) - set(OPTION_KEYS))
    if unknown:
        raise InputError(f"unknown option keys {unknown}")
    opts = Options()
    if "trials" in raw:
        opts.trials = _int(raw["trials"], "trials", 1)
    if "seed" in raw:
        opts.seed = _int(raw["seed"], "seed")
    if "points" in raw and raw["points"] is not None:
        pts = raw["points"]
        if not isinstance(pts, list) or not all(isinstance(p, list) for p in pts):
            raise InputError("options.points must be a list of coordinate lists")
        opts.points = pts
    if "factorial" in raw:
        opts.factorial = bool(raw["factorial"])
    if raw.get("y_degree_cap") is not None:
        opts.y_degree_cap = _int(raw["y_degree_cap"], "y_degree_cap", 1)
    if "budget" in raw:
        b = raw["budget"] or {}
        opts.budget = Budget(_int(b.get("max_pairs", DEFAULT_BUDGET.max_pairs), "budget.max_pairs", 1),
                             _int(b.get("max_degree", DEFAULT_BUDGET.max_degree), "budget.max_degree", 1))
    return opts


def parse_document(data: dict, name: str | None = None) -> InputDocument:
    if not isinstance(data, dict):
        raise InputError("the input must be a JSON object")
    try:
        ring = data["ring"]
        variables = ring["variables"]
        forms = data["map"]["forms"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"missing required key {exc}") from None
    char = ring.get("characteristic", 0)
    if isinstance(char, bool) or not isinstance(char, int):
        raise InputError("ring.characteristic must be an integer")
    if not isinstance(variables, list) or not variables or not all(isinstance(v, str) for v in variables):
        raise InputError("ring.variables must be a nonempty list of names")
    if not isinstance(forms, list) or not forms:
        raise InputError("map.forms must be a nonempty list")
    variety = data.get("variety_ideal") or []
    if not isinstance(variety, list):
        raise InputError("variety_ideal must be a list")
    doc = InputDocument(variables, char, forms, variety, parse_options(data.get("options")), name)
    try:
        doc.ring()
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return doc


def load_document(path) -> InputDocument:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    return parse_document(data, path.stem)


def document_from_forms(forms: str, variables: str, characteristic: int = 0) -> InputDocument:
    """The ``--forms "x^2,y*z" --vars x,y,z`` shortcut for maps on P^n."""
    names = [v.strip() for v in variables.split(",") if v.strip()]
    texts = [f.strip() for f in forms.split(",")]
    return parse_document({"ring": {"variables": names, "characteristic": characteristic},
                           "map": {"forms": texts}})


# --- bundled corpus ------------------------------------------------------------


def corpus_names() -> list[str]:
    from importlib.resources import files

    return sorted(p.name[:-5] for p in files("rmdeg").joinpath("corpus").iterdir() if p.name.endswith(".json"))


def corpus_text(name: str) -> str:
    from importlib.resources import files

    if name not in corpus_names():
        raise InputError(f"no bundled example named {name!r}; try 'rmdeg examples list'")
    return files("rmdeg").joinpath("corpus", f"{name}.json").read_text()


def load_corpus(name: str) -> InputDocument:
    return parse_document(json.loads(corpus_text(name)), name)


def resolve_input(ref: str) -> InputDocument:
    """A path to a JSON document, or the name of a bundled example."""
    path = Path(ref)
    if path.exists():
        return load_document(path)
    stem = path.name[:-5] if path.name.endswith(".json") else path.name
    if stem in corpus_names():
        return load_corpus(stem)
    raise InputError(f"{ref}: no such file or bundled example")
