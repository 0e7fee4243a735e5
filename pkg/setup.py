from setuptools import setup, find_packages

setup(
    name="skew-ferrers-betti",
    version="0.1.0",
    description="Exact graded Betti numbers of skew Ferrers graphs and closed-graph initial ideals",
    author="SkewBetti",
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.26.0",
        "scipy>=1.12.0",
        "networkx>=3.2",
    ],
    extras_require={
        "test": ["pytest>=8.0", "hypothesis>=6.98"],
    },
    entry_points={
        "console_scripts": [
            "skewbetti=src.main:main",
        ],
    },
)
