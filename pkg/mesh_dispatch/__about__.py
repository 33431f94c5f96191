# inspired from:

# https://python-packaging-user-guide.readthedocs.org/en/latest/single_source_version/
# https://github.com/pypa/warehouse/blob/master/warehouse/__about__.py

__all__ = [
    "__author__",
    "__email__",
    "__license__",
    "__summary__",
    "__uri__",
    "__version__",
]

__version__ = '0.1.0'


__summary__ = ("Decentralized economic dispatch and demand response "
               "coordination for multi-energy systems")
__keywords__ = ("energy hub, economic dispatch, demand response, admm, "
                "dynamic average tracking, consensus, cython")
__uri__ = 'https://github.com/mesh-dispatch/mesh-dispatch'

__author__ = 'mesh-dispatch developers'
__email__ = 'mesh-dispatch@users.noreply.github.com'

__license__ = 'MIT'
