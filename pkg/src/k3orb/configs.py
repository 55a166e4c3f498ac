"""Surface configurations: the lattice data every computation runs against.

A config is a UTF-8 JSON document::

    {
      "name": "nikulin",
      "ns_gram": [[2]],
      "singular_points": [{"type": "A1", "count": 8}],
      "chi_O": "2",
      "ample": ["1"]
    }

Rationals are written as ``"p/q"`` (or integer) strings so they stay exact.
``ample`` is optional.  Coordinates of orbifold Mukai vectors follow the
order ``(r, beta..., marks of point 1, marks of point 2, ..., n)`` where the
points are listed in config order, each repeated ``count`` times.
"""

from dataclasses import dataclass
from fractions import Fraction
import json

from .errors import ConfigError, K3OrbError
from .lattice import NSLattice, SingularPointData, bilinear, root_system, _is_symmetric


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text):
    if isinstance(text, bool):
        raise ConfigError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ConfigError(f"rationals must be strings, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a rational: {text!r}") from None


@dataclass(frozen=True)
class SurfaceConfig:
    name: str
    ns_gram: tuple
    singular_points: tuple = ()
    chi_O: Fraction = Fraction(2)
    ample: tuple = None

    def __post_init__(self):
        try:
            gram = tuple(tuple(int(x) for x in row) for row in self.ns_gram)
        except (TypeError, ValueError):
            raise ConfigError("ns_gram must be a matrix of integers") from None
        if not gram or any(len(row) != len(gram) for row in gram):
            raise ConfigError("ns_gram must be a nonempty square matrix")
        if not _is_symmetric(gram):
            raise ConfigError("ns_gram is asymmetric")
        object.__setattr__(self, "ns_gram", gram)
        object.__setattr__(self, "singular_points", tuple(self.singular_points))
        for p in self.singular_points:
            p.root_system.validate()
        object.__setattr__(self, "chi_O", Fraction(self.chi_O))
        if self.ample is not None:
            ample = tuple(Fraction(x) for x in self.ample)
            if len(ample) != len(gram):
                raise ConfigError("ample vector length does not match ns_gram")
            if bilinear(ample, ample, gram) <= 0:
                raise ConfigError("ample vector is not ample (self-intersection <= 0)")
            object.__setattr__(self, "ample", ample)

    @property
    def lattice(self):
        return NSLattice(self.ns_gram)

    @property
    def point_systems(self):
        """Root system of every singular point, with multiplicities expanded."""
        return tuple(p.root_system for p in self.singular_points for _ in range(p.count))

    @property
    def dimension(self):
        return 2 + len(self.ns_gram) + sum(rs.rank for rs in self.point_systems)

    def to_dict(self):
        d = {
            "name": self.name,
            "ns_gram": [list(row) for row in self.ns_gram],
            "singular_points": [
                {"type": p.root_system.label, "count": p.count} for p in self.singular_points
            ],
            "chi_O": format_rational(self.chi_O),
        }
        if self.ample is not None:
            d["ample"] = [format_rational(x) for x in self.ample]
        return d


def dump_config(config):
    return json.dumps(config.to_dict(), indent=2) + "\n"


def config_from_dict(d):
    if not isinstance(d, dict):
        raise ConfigError("config document must be a JSON object")
    unknown = set(d) - {"name", "ns_gram", "singular_points", "chi_O", "ample"}
    if unknown:
        raise ConfigError(f"unknown config fields: {', '.join(sorted(unknown))}")
    if "ns_gram" not in d:
        raise ConfigError("missing field ns_gram")
    points = []
    for p in d.get("singular_points", []):
        if not isinstance(p, dict) or "type" not in p:
            raise ConfigError("singular point entries need a type")
        try:
            rs = root_system(str(p["type"]))
        except K3OrbError:
            raise ConfigError(f"unknown ADE kind {p['type']!r}") from None
        count = p.get("count", 1)
        if not isinstance(count, int) or isinstance(count, bool) or count < 1:
            raise ConfigError(f"bad singular point count {count!r}")
        points.append(SingularPointData(rs, count))
    ample = d.get("ample")
    if ample is not None:
        if not isinstance(ample, list):
            raise ConfigError("ample must be a list of rationals")
        ample = [parse_rational(x) for x in ample]
    gram = d["ns_gram"]
    if not isinstance(gram, list) or not all(isinstance(row, list) for row in gram):
        raise ConfigError("ns_gram must be a list of lists")
    if any(not isinstance(x, int) or isinstance(x, bool) for row in gram for x in row):
        raise ConfigError("ns_gram entries must be integers")
    return SurfaceConfig(
        name=str(d.get("name", "")),
        ns_gram=gram,
        singular_points=points,
        chi_O=parse_rational(d.get("chi_O", "2")),
        ample=ample,
    )


def load_config(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"parse failure: {exc}") from None
    return config_from_dict(d)


def builtin_nikulin():
    """Quotient of a K3 by a Nikulin involution: eight A1 points.

    The invariant NS part is modelled by a degree-2 polarization ``[[2]]``
    with ample class ``(1)``.
    """
    return SurfaceConfig(
        name="nikulin",
        ns_gram=((2,),),
        singular_points=(SingularPointData(root_system("A1"), 8),),
        chi_O=Fraction(2),
        ample=(Fraction(1),),
    )
