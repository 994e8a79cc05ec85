#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
from setuptools import setup, find_packages

from src.zfeedback import __version__, CMD_NAME, APP_URL

# Utility function to read the README file.
# Used for the long_description.
def read(fname):
    return open(os.path.join(os.path.dirname(__file__), fname)).read()

setup(
    name=CMD_NAME,
    version=__version__,
    description='Error-free feedback coding over the adversarial Z-channel',
    long_description=read(os.path.join(os.path.dirname(__file__), 'docs/README.md')),
    long_description_content_type='text/markdown',
    install_requires=[
        'pyyaml',
        'graphviz',
        'numpy',
        'scipy',
        ],
    extras_require={
        'test': ['pytest', 'hypothesis'],
        },
    license='GPLv3',
    keywords='z-channel feedback coding half-lie game error-correction capacity',
    url=APP_URL,
    package_dir={'': 'src'},
    packages=find_packages('src'),
    package_data={'zfeedback': ['sweep.yml']},
    entry_points={
        'console_scripts': ['zfeedback=zfeedback.zfeedback:main'],
        },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        ],

)
