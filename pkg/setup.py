import setuptools
from setuptools import setup

install_requires = [
    "numpy",
    "scipy",
    "matplotlib",
    "importlib-metadata ; python_version<'3.8'",
]

extras_require = {
    "test": ["pytest", "sympy", "mpmath"],
}

with open("README.md", "r") as fh:
    long_description = fh.read()

setup(
    name="pynekhoro",
    version="0.1.0",
    description="A numerical laboratory for Nekhoroshev stability estimates of near-integrable Hamiltonian systems",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "License :: OSI Approved :: MIT License ",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering",
    ],
    license="MIT",
    packages=setuptools.find_packages(exclude=["tests", "examples", "examples.*"]),
    python_requires=">=3.8",
    install_requires=install_requires,
    extras_require=extras_require,
    entry_points={"console_scripts": ["pynekhoro=pynekhoro.harness.cli:main"]},
    setup_requires=["wheel"],
)
