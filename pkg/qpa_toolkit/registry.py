""" Contains :Registry: class and related utilities """

from functools import lru_cache

from .errors import UnknownSymbolError

# pylint: disable=W0603,C0103

RECOGNIZER = 'recognizer'
EXHIBIT = 'exhibit'


class Registry:
    """ Holds the named zoo entry builders. Builders are cached, so every
    lookup of a name returns the same immutable entry """

    def __init__(self):
        self._builders = {}
        self._kinds = {}

    def register(self, name, kind=RECOGNIZER):
        """ Decorator registering a zero-argument entry builder under ``name`` """

        assert kind in (RECOGNIZER, EXHIBIT), f'Unknown zoo entry kind "{kind}"'

        def decorator(builder):
            assert name not in self._builders, f'Zoo entry "{name}" is already registered'
            cached = lru_cache(maxsize=None)(builder)
            self._builders[name] = cached
            self._kinds[name] = kind
            return cached

        return decorator

    def get(self, name):
        """ Returns the entry registered under ``name`` """
        try:
            builder = self._builders[name]
        except KeyError:
            raise UnknownSymbolError(
                f'No zoo entry named {name!r}; known entries: {", ".join(self.names())}') from None
        return builder()

    def names(self, kind=None):
        return [name for name in self._builders if kind is None or self._kinds[name] == kind]

    def kind_of(self, name):
        return self._kinds[name]


registry = None


def get_global_registry():
    """ Returns a globally shared :Registry: object """
    global registry
    if not registry:
        registry = Registry()
    return registry
