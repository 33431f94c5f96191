import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    print("Please install cython and try again.")
    raise SystemExit

import numpy

PACKAGES = [
    'mesh_dispatch',
    'mesh_dispatch.analysis',
    'mesh_dispatch.cases',
    'mesh_dispatch.cli',
    'mesh_dispatch.coordination',
    'mesh_dispatch.hub',
    'mesh_dispatch.network',
    'mesh_dispatch.oracle',
    'mesh_dispatch.solver',
]


def setup_package():
    root = os.path.abspath(os.path.dirname(__file__))

    with open(os.path.join(root, 'mesh_dispatch', '__about__.py')) as f:
        about = {}
        exec(f.read(), about)

    with open(os.path.join(root, 'README.rst')) as f:
        readme = f.read()

    extensions = []
    extensions.append(
        Extension(
            "mesh_dispatch.network.mixing",
            language='c++',
            sources=['mesh_dispatch/network/mixing.pyx'],
            include_dirs=[
                numpy.get_include(),
            ]
        )
    )

    setup(
        name="mesh-dispatch",
        packages=PACKAGES,
        package_data={'': ['*.pyx']},
        description=about['__summary__'],
        long_description=readme,
        keywords=about['__keywords__'],
        author=about['__author__'],
        author_email=about['__email__'],
        version=about['__version__'],
        url=about['__uri__'],
        license=about['__license__'],
        ext_modules=cythonize(
            extensions,
            compiler_directives={"language_level": "3str"}
        ),
        entry_points={
            'console_scripts': [
                'mesh-dispatch=mesh_dispatch.cli:main',
            ],
        },
        classifiers=[
            'Environment :: Console',
            'Intended Audience :: Science/Research',
            'License :: OSI Approved :: MIT License',
            'Operating System :: POSIX :: Linux',
            'Programming Language :: Cython',
            'Programming Language :: Python :: 3',
            'Topic :: Scientific/Engineering :: Mathematics',
        ],
        python_requires='>=3.8',
        install_requires=[
            "cython>=0.29",
            "numpy>=1.20",
            "scipy>=1.7",
            "networkx>=2.5",
        ]
    )


if __name__ == '__main__':
    setup_package()
