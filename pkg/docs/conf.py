# Sphinx configuration for the chaintree documentation.
#
# Build with ``sphinx-build -b html docs docs/_build`` from the repository root.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

project = 'chaintree'
copyright = '2024, Florian Breit'
author = 'Florian Breit'
release = '0.1.0'

extensions = [
    'sphinx.ext.autosummary',
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
]

autodoc_default_options = {
    'members': True,
    'undoc-members': True,
    'show-inheritance': True,
}

autodoc_member_order = 'bysource'
autodoc_typehints = 'description'
python_use_unqualified_type_names = True

# Backticks in docstrings are cross references.
default_role = 'py:obj'
add_module_names = False
modindex_common_prefix = ['chaintree.']

exclude_patterns = ['_build']

html_theme = 'sphinx_rtd_theme'
