# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Sphinx configuration."""

from ldpc_iterdesign import __version__

# -- General configuration ------------------------------------------------

# Do not warn on external images.
suppress_warnings = ["image.nonlocal_uri"]

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.coverage",
    "sphinx.ext.doctest",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

# General information about the project.
project = "ldpc-iterdesign"
copyright = "2025, Cottage Labs"
author = "Cottage Labs"

# The full version, including alpha/beta/rc tags.
release = __version__
version = ".".join(__version__.split(".")[:2])

language = "en"
exclude_patterns = ["_build"]
pygments_style = "sphinx"
todo_include_todos = False

# Google-style docstrings only.
napoleon_numpy_docstring = False
autodoc_member_order = "bysource"

# -- Options for HTML output ----------------------------------------------
html_theme = "alabaster"

html_theme_options = {
    "description": "Iteration-constrained design of LDPC and GLDPC code ensembles",
    "github_user": "CottageLabs",
    "github_repo": "ldpc-iterdesign",
    "github_button": False,
    "github_banner": True,
    "show_powered_by": False,
}

html_sidebars = {
    "**": [
        "about.html",
        "navigation.html",
        "relations.html",
        "searchbox.html",
    ]
}

htmlhelp_basename = "ldpc-iterdesign_namedoc"

# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
    (
        master_doc,
        "ldpc-iterdesign.tex",
        "ldpc-iterdesign Documentation",
        "Cottage Labs",
        "manual",
    ),
]

# -- Options for manual page output ---------------------------------------

man_pages = [(master_doc, "ldpc-iterdesign", "ldpc-iterdesign Documentation", [author], 1)]

# Example configuration for intersphinx: refer to the Python standard library.
intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
}

# Autodoc configuraton.
autoclass_content = "both"
