__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

class UIMixin:
    """
    Mixin for the result objects handed back to users: expansions,
    verification and golden reports, and measure tables. Each one sets
    ``_id`` from its defining content, ``_meta`` and a ``to_dict`` form.
    """

    @property
    def id(self) -> str:
        """Content-derived identifier; equal results share it."""
        return self._id

    @property
    def meta(self) -> dict:
        """
        Retrieve the ``meta`` values (read-only)
        """
        return dict(self._meta)

    def help(self, additionals: list = None):
        """
        Print the shared result methods and the properties of this object.
        """
        properties = ['id', 'meta'] + (additionals or [])
        print(' > result.info() - Identifier and metadata')
        print('Properties: ', ', '.join(properties))

    def info(self):
        """
        Information about this result.
        """
        print(self.__repr__())

    def __repr__(self):
        """Identifier line followed by the metadata"""
        repr = [str(self)]
        for k, v in self._meta.items():
            repr.append(f' - {k}: {v}')
        return '\n'.join(repr)
