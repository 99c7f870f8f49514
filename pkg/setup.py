#!/usr/bin/env python

from setuptools import setup

requirements = [
    'numpy==1.26.4',
    'sympy==1.12',
]

test_requirements = [
    'hypothesis==6.92.1',
    'pytest==7.4.4',
    'sphinx==7.2.6',
    'sphinx-autobuild==2021.3.14',
    'sphinx-rtd-theme==2.0.0',
]

if __name__ == "__main__":
    module_name = 'reglat'
    module_version = '0.1.0'
    setup(
        name=module_name,
        version=module_version,
        description="reglat verifies and classifies regular diagonal positive definite quadratic forms",
        long_description=open('README.rst', 'r').read(),
        author='reglat developers',
        packages=[
            'reglat',
            'reglat.extra',
            'reglat_test'
        ],
        include_package_data=True,
        python_requires='>=3.9',
        install_requires=requirements,
        tests_require=test_requirements,
        extras_require={'test': test_requirements},
        entry_points={
            'console_scripts': ['reglat = reglat.cli:main'],
        },
    )
