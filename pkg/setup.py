from setuptools import setup
from pathlib import Path

setup(
    name='risfading',
    version="0.1.0",
    description='Two-path RIS propagation simulator for fast fading mitigation',
    long_description=Path("README.md").read_text(),
    long_description_content_type="text/markdown",
    license='MIT',
    packages=['risfading', 'risfading.config', 'risfading.core', 'risfading.utils'],
    install_requires=[
        'numpy >= 1.22',
        'scipy >= 1.8',
        'matplotlib >= 3.6',
        'PyYAML'
    ],
    extras_require={
        "dev": [
            "pytest"
        ]
    },
    entry_points={
        "console_scripts": [
            "risfading = risfading.cli:main"
        ]
    },
    python_requires=">=3.8",
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Topic :: Scientific/Engineering',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Programming Language :: Python :: 3.13'
    ]
)
