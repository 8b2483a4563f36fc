# The package metadata lives in setup.cfg. This stub keeps `pip install -e .` working with older pip versions.

from setuptools import setup

if __name__ == "__main__":
    setup()
