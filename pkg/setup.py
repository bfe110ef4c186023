from setuptools import setup, find_packages

with open('README.md', 'r') as file_readme:
    long_desc = file_readme.read()

setup(
    name='ckm',
    version='0.1.0',
    author='CKM Developers',
    description='The Controlled Keplerian Motion Toolbox',
    long_description=long_desc,
    long_description_content_type='text/markdown',
    keywords=['astrodynamics', 'low-thrust', 'optimal-control', 'controllability', 'python3'],
    packages=find_packages(exclude=['tests']),
    package_data={
        'ckm': ['scenarios/*.yaml']
    },
    classifiers=[
        'Programming Language :: Python :: 3',
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering'
    ],
    license='BSD',
    install_requires=[
        'numpy>=1.19',
        'pyyaml>=5.4',
        'scipy>=1.7',
        'sympy>=1.6'
    ],
    extras_require={
        'test': ['pytest>=6.0']
    },
    entry_points={
        'console_scripts': ['ckm=ckm.cli:main']
    },
    python_requires='>=3.8',
    zip_safe=False,
    include_package_data=True
)
