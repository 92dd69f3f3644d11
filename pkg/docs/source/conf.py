# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# For a full list of options see the documentation:
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath(os.path.join("..", "..")))

import clsaddle


# -- Project information -----------------------------------------------------

project = 'clsaddle'
copyright = '2026, Jiajun Yang'
author = 'Jiajun Yang'

# The short X.Y version
version = '.'.join(clsaddle.__version__.split('.')[:2])
# The full version, including alpha/beta/rc tags
release = clsaddle.__version__


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon'
]

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

language = 'en'

exclude_patterns = []

pygments_style = None


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_static_path = ['_static']


# -- Options for HTMLHelp output ---------------------------------------------

htmlhelp_basename = 'clsaddledoc'


# -- Options for LaTeX output ------------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, 'clsaddle.tex', 'clsaddle Documentation',
     'Jiajun Yang', 'manual'),
]


# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'clsaddle', 'clsaddle Documentation',
     [author], 1)
]


# -- Options for Epub output -------------------------------------------------

epub_title = project

epub_exclude_files = ['search.html']
