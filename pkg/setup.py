from pathlib import Path

import setuptools


def parse_requirements(filename: str):
    lines = Path(__file__).with_name(filename).read_text().splitlines()
    return [line.strip() for line in lines if line.strip() and not line.startswith('#')]


setuptools.setup(install_requires=parse_requirements('requirements.txt'))
