from setuptools import setup, find_packages

setup(
    name="pytunnelscan",
    version="0.1.0",
    author="PyTunnelScan Team",
    description="Angular quantum tunneling: closed-form models, transfer-matrix solver and sweep CLI",
    long_description=open("README.md", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    py_modules=["cli"],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.8",
        "pandas>=2.0",
        "plotly>=5.0",
        "colorama>=0.4.6",
        "pyyaml>=6.0",
    ],
    extras_require={
        "dev": ["pytest", "black", "flake8"],
    },
    entry_points={
        "console_scripts": [
            "pytunnelscan=cli:main",
        ],
    },
)
