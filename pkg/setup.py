from setuptools import setup, find_packages

setup(
    name = 'pycq',
    version = '0.1.0',
    packages = find_packages(exclude=['tests', 'tutorial']),
    description = 'Structure, extra connectivity, and extra diagnosability of crossed cubes',
    # url = '',
    # download_url = '',
    install_requires = ['networkx', 'numpy', 'tqdm', 'matplotlib'],
    extras_require = {'viewer': ['dash', 'dash-cytoscape']},
    tests_require = ['tox', 'pytest', 'hypothesis'],
    entry_points = {
        'console_scripts': ['pycq = pycq.cli:main'],
    },
    classifiers = [
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: System :: Networking'
        ],
)
