# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 18:52:40 2026

Installs the ccbound modules. With cx_Freeze available, "python setup.py
build_exe" also freezes ccbound.py into a standalone executable.
"""

modules = ['ccbound', 'cli', 'model', 'labeling', 'saturation', 'bounds', 'variants', 'diagnostics']
packages = ['Misc']
requires = ['numpy', 'networkx>=2.4']

options = dict(name='ccbound',
               version='0.1',
               description='Lower bounds for the coded caching problem',
               py_modules=modules,
               packages=packages,
               install_requires=requires,
               extras_require={'test': ['pytest', 'hypothesis'], 'freeze': ['cx_Freeze']},
               python_requires='>=3.8',
               entry_points={'console_scripts': ['ccbound = cli:main_exit']})

try:
    from cx_Freeze import setup, Executable

    build_exe_options = {"includes": modules,
                         "packages": ["numpy", "networkx"] + packages}
    options['options'] = {"build_exe": build_exe_options}
    options['executables'] = [Executable('ccbound.py', base=None)]
except ImportError:
    from setuptools import setup

setup(**options)
