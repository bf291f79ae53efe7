from setuptools import find_packages, setup

setup(
    name="partlab",
    version="0.1.0",
    description="Brute-force verification lab for distinct, consecutive and almost consecutive partition identities",
    packages=find_packages(),
    install_requires=[
        "numpy",
        "omegaconf",
        "fsspec",
        "pydantic",
        "typer<0.26",
        "click",
        "rich",
        "orjson",
    ],
    entry_points={"console_scripts": ["partlab=partlab.cli:main"]},
)
