#!/usr/bin/env python3
"""
Setup script for hypspinor
Harmonic spinors on complex hyperbolic space and Fourier blocks of CR deformations of S3.
"""

from setuptools import setup
from pathlib import Path

# Read the README file
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text(encoding='utf-8')

setup(
    name="hypspinor",
    version="1.0.0",
    author="hypspinor developers",
    description="Harmonic spinors on complex hyperbolic space and Fourier blocks of CR deformations of S3",
    long_description=long_description,
    long_description_content_type="text/markdown",
    py_modules=[
        "cli",
        "exceptions",
        "invariants",
        "moduli",
        "radial",
        "rep_core",
        "special_fn",
        "suites",
    ],
    packages=["config"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Environment :: Console",
    ],
    python_requires=">=3.8",
    install_requires=[
        "sympy>=1.9",
        "mpmath>=1.2",
        "numpy>=1.21",
        "scipy>=1.7",
        "typing-extensions>=4.0.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0",
            "hypothesis>=6.0",
            "black>=21.0",
            "flake8>=3.8",
            "mypy>=0.800",
        ],
    },
    entry_points={
        "console_scripts": [
            "hypspinor=cli:main",
        ],
    },
    include_package_data=True,
    package_data={
        "": ["*.md", "*.txt"],
        "config": ["*.py"],
    },
    keywords="dirac operator harmonic spinors sl2 hypergeometric cr structures cli",
    license="MIT",
    zip_safe=False,
)
