import setuptools

# Will load the README file into a long_description of the package
with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()
# Load the requirements file
with open('requirements.txt') as f:
    required = f.read().splitlines()
if __name__ == "__main__":
    setuptools.setup(
        name='spectra',
        version='1.0.0',
        description="Laplace eigenvalues on planar domains by finite elements, boundary integrals and particular solutions",
        long_description=long_description,
        long_description_content_type="text/markdown",
        license='MIT',
        python_requires='>=3.9',
        install_requires=required,
        extras_require={"test": ["pytest>=7.0"]},
        entry_points={"console_scripts": ["spectra=spectra.controllers.tasks:main"]},
        zip_safe= False,
        package_dir={"": "src"},
        packages=setuptools.find_packages(where='src'),
        include_package_data=True,
    )
