""" Setup script for qpa-toolkit """

import ast
import re

from setuptools import find_packages, setup

_version_re = re.compile(r'__version__\s+=\s+(.*)')

with open('qpa_toolkit/__init__.py', 'rb') as f:
    match = _version_re.search(f.read().decode('utf-8')).group(1)
    version = str(ast.literal_eval(match))


setup(
    name='qpa-toolkit',
    version=version,

    description='Quantum pushdown automata: well-formedness, simulation and DFA compilation',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',

    license='MIT',

    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Physics',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
    ],

    keywords='quantum automata pushdown unitarity graphene mongoengine',

    packages=find_packages(exclude=['*.tests']),
    python_requires='>=3.9',

    install_requires=[
        'graphene>=3.0',
        'mongoengine',
        'singledispatch>=3.4.0.3',
        'numpy',
        'scipy',
    ],

    tests_require=[
        'pytest>=2.7.2',
        'hypothesis',
    ],

    entry_points={
        'console_scripts': [
            'qpa = qpa_toolkit.cli:main',
        ],
    },
)
