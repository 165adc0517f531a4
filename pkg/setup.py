# Always prefer setuptools over distutils
import re

from setuptools import setup, find_packages
# To use a consistent encoding
from codecs import open
from os import path

here = path.abspath(path.dirname(__file__))

# read the version from robsched/_version.py
version_file_contents = open(path.join(here, 'robsched/_version.py'), encoding='utf-8').read()
VERSION = re.compile('__version__ = \"(.*)\"').search(version_file_contents).group(1)

# Get the long description from the README file
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

packages = find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*'])

setup(
    name='robsched',

    version=VERSION,

    description='Robust makespan minimisation under budgeted uncertainty: exact solvers, dual approximation schemes and hardness instances.',
    long_description=long_description,
    long_description_content_type="text/markdown",

    license='Apache License 2.0',

    classifiers=[
        'Development Status :: 3 - Alpha',

        'Intended Audience :: Science/Research',
        'Intended Audience :: Education',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Libraries',

        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
    ],

    keywords='scheduling makespan robust-optimization budgeted-uncertainty approximation-schemes',

    packages=packages,

    # List run-time dependencies here.
    install_requires=['numpy>=1.23.0', 'tqdm>=4.62.3'],

    python_requires='>=3.8',

    # $ pip install -e .[dev,test]
    extras_require={
        'dev': ['check-manifest'],
        'test': ['coverage', 'pytest', 'hypothesis'],
    },

    data_files=[],

    entry_points={
        'console_scripts': [
            'robsched=robsched.bench.main:main',
        ],
    },
)
