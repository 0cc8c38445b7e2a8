from setuptools import find_packages, setup

setup(
    name="galrel",
    version="1.0.0",
    packages=find_packages(where="src", include=["galrel*"]),
    package_dir={"": "src"},
    package_data={"galrel": ["fixtures/*.json"]},
    install_requires=[
        "python-dotenv",
        "numpy>=1.24.0",
        "pandas>=2.0.0",
        "sympy>=1.12",
        "mpmath>=1.3.0",
    ],
    extras_require={
        "dev": [
            "pytest",
            "pytest-cov",
            "pytest-mock",
            "flake8",
            "black",
        ],
    },
    entry_points={"console_scripts": ["galrel=galrel.core.main:main"]},
    description="Verification of relations among invariants of Galois number fields",
    long_description=open("README.md", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
)
