from .version import __version__  # noqa: 401
