# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

import setuptools

setuptools.setup(
    package_dir={"": "src"},
    packages=setuptools.find_packages("src"),
    package_data={
        "": ["LICENSE*", "README*"],
        "smfp": ["data/*.tsv", "data/*.txt", "data/lexicons/*.jsonl"],
    },
    entry_points={"console_scripts": ["smfp = smfp.cli:main"]},
)
