import os
from setuptools import setup, find_packages


def read(fname):
    return open(os.path.join(os.path.dirname(__file__), fname)).read()


setup(
    name = "nearly_convex",
    version = "0.1.0",
    author = "Luis Rodrigues, PhD",
    author_email = "luisrodriguesphd@gmail.com",
    description = ("""A library and CLI for epsilon-subdifferentials, epsilon-normal sets and epsilon-coderivatives of nearly convex functions and sets on R and R^2, with calculus rules, optimality certificates and sensitivity of optimal value functions."""),
    license = "MIT",
    url = "",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    install_requires=[
        "numpy>=1.26",
        "scipy>=1.11",
        "pandas==2.3.3",
        "matplotlib>=3.8",
        "pydantic>=2.6",
        "python-dotenv>=1.0.0",
        "pydantic-settings>=2.10.1",
    ],
    long_description=read('README.md'),
    entry_points={
        "console_scripts": [
            "ncx = nearly_convex.cli.main:main",
        ],
    },
)
