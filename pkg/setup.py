from setuptools import setup, find_packages

setup(
    name="gaugex",
    version="0.1.0",
    description="Unbounded continuous logic over gauged metric structures",
    packages=find_packages(include=["gaugex", "gaugex.*"]),
    package_data={"gaugex": ["config/*.yml", "theories/data/*.thy", "theories/data/*.sig"]},
    install_requires=[
        "numpy>=1.20.0",
        "scipy>=1.7.0",
        "pandas>=1.3.0",
        "pyyaml>=5.1.0",
    ],
    extras_require={
        "test": ["pytest>=6.0.0", "pytest-cov>=2.12.0"],
    },
    entry_points={"console_scripts": ["gaugex=gaugex.cli:main"]},
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
