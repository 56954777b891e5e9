# This file is part of tapestry, licensed under the BSD-3-Clause License.

from setuptools import setup

from io import open


def get_readme_md_contents():
    """read the contents of your README file"""
    with open("README.md", encoding="utf-8") as f:
        long_description = f.read()
        return long_description


version = {}
with open("tapestry/version.py") as fp:
    exec(fp.read(), version)

install_reqs = [
    "numpy>=1.17",
    "scipy>=1.3",
]

setup(
    name="tapestry",
    version=version["__version__"],
    install_requires=install_reqs,
    tests_require=["pytest", "mock", "freezegun", "hypothesis"],
    packages=[
        "tapestry",
        "tapestry.algebra",
        "tapestry.core",
        "tapestry.engine",
        "tapestry.interpretation",
        "tapestry.kernels",
        "tapestry.measurement",
        "tapestry.oracle",
        "tapestry.shell",
        "tapestry.util",
    ],
    package_data={"tapestry": ["py.typed"]},
    author="The tapestry developers",
    long_description=get_readme_md_contents(),
    long_description_content_type="text/markdown",
    description="Process-algebra generation of discrete quantum dynamics on a lattice",
    license="BSD",
    keywords="quantum process-algebra lattice",
    entry_points={"console_scripts": ["tapestry = tapestry.shell:main"]},
    test_suite="tests",
    python_requires=">=3.7",
    classifiers=[
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    # Required by Mypy when declaring PEP 561 compatibility with `py.typed`
    # file.
    zip_safe=False,
)
