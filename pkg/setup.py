from setuptools import setup

setup(
    name='tlbraid',
    version='0.1.0',
    description='Jones polynomials and braid compilation through the Temperley-Lieb path model',
    long_description='see README.md',
    license='MIT License',
    packages=['tlbraid', 'tlbraid.tools'],
    include_package_data=True,
    install_requires=['numpy', 'scipy'],
    entry_points={'console_scripts': ['tlbraid=tlbraid.cli:main']},
    classifiers=[
        'Development Status :: 3 - Alpha',

        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Physics',
        'License :: OSI Approved :: MIT License',

        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],
    python_requires='>=3.8',
    keywords='braid knot jones polynomial kauffman bracket temperley-lieb solovay-kitaev quantum circuit',
)
