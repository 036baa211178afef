from setuptools import setup, find_packages

setup(
    name='rho_ortho',
    version='0.1',
    packages=find_packages(exclude=['tests']),
    install_requires=[
        'numpy~=1.26.4',
    ],
    extras_require={
        'test': ['pytest==7.4.0']
    },
    entry_points={
        'console_scripts': [
            'rho_ortho=rho_ortho.cli:main',
        ],
    },
    package_data={
        'rho_ortho': ['logs/*'],
    }
)
