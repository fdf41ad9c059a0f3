# etvea documentation build configuration file.
import logging

import etvea

VERSION = RELEASE = etvea.__version__

if __name__ == "__main__":
    logging.basicConfig()

log = logging.getLogger(__name__)

PROJECT_NAME = "etvea"
PROJECT_AUTHORS = "The etvea developers"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.viewcode",
    "myst_parser",
]

source_suffix = {
    ".rst": "restructuredtext",
    ".md": "markdown",
}
master_doc = "index"
exclude_patterns = ["build"]

project = PROJECT_NAME
copyright = "2026, %s" % PROJECT_AUTHORS
version = VERSION
release = RELEASE

autodoc_member_order = "bysource"
add_function_parentheses = True
pygments_style = "sphinx"

html_theme = "furo"
html_title = "%s %s" % (PROJECT_NAME, RELEASE)
html_static_path = []
