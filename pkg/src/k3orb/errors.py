class K3OrbError(ValueError):
    """Base class for rejected inputs and domain violations."""


class ShapeError(K3OrbError):
    pass


class ConfigError(K3OrbError):
    pass
