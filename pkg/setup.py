import re
from setuptools import setup, find_packages


def get_version():
    with open('vankampen/__init__.py', 'r', encoding='utf-8') as f:
        version_match = re.search(r"^__version__ = ['\"]([^'\"]*)['\"]", f.read(), re.M)
        if version_match:
            return version_match.group(1)
    raise RuntimeError("Unable to find version string.")


setup(
    name="vankampen",
    version=get_version(),
    packages=find_packages(exclude=('tests', 'examples', 'examples.*')),
    # Templates, default settings and the complex corpus ship with the package
    package_data={
        'vankampen': ['templates/*.j2', 'data/*'],
    },
    # The rest of the metadata is in pyproject.toml
)
