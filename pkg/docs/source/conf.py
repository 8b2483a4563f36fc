# -*- coding: utf-8 -*-
#
# Sphinx configuration of the feynman-silt documentation.

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))

from feynman_silt import __version__  # noqa: E402

# -- Project information -----------------------------------------------------

project = 'feynman-silt'
copyright = '2026, feynman-silt developers'
author = 'feynman-silt developers'
version = '.'.join(__version__.split('.')[:2])
release = __version__

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.autosectionlabel',
]

autodoc_default_options = {'members': True, 'undoc-members': True}
autodoc_member_order = 'bysource'
autosectionlabel_prefix_document = True

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = []
htmlhelp_basename = 'feynman-siltdoc'

# -- Options for LaTeX and manual page output --------------------------------

latex_documents = [
    (master_doc, 'feynman-silt.tex', 'feynman-silt Documentation', author, 'manual'),
]
man_pages = [
    (master_doc, 'feynman-silt', 'feynman-silt Documentation', [author], 1)
]
