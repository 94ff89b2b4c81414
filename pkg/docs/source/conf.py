# Sphinx configuration for the conic-ldpc documentation.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Project information -----------------------------------------------------

project = "conic-ldpc"
copyright = "2025, Yaryna Rachkevych, Mikołaj Kalitka, Krystian Ćwikliński, Magda Tytoń"
author = "Yaryna Rachkevych, Mikołaj Kalitka, Krystian Ćwikliński, Magda Tytoń"
release = "0.1.0"

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
]

templates_path = ["_templates"]
exclude_patterns = []

# Source order within each module.
autodoc_member_order = "bysource"
autodoc_typehints = "description"

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
    "flask": ("https://flask.palletsprojects.com/en/stable", None),
}

# -- Options for HTML output -------------------------------------------------

html_theme = "furo"
html_title = "conic-ldpc"
html_static_path = ["_static"]

# -- Napoleon settings -------------------------------------------------------

napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_use_rtype = False
