import os
import sys

# allow running the suite from a checkout without installing the package
SRC = os.path.join(os.path.dirname(__file__), "..", "src")
if os.path.isdir(SRC) and SRC not in sys.path:
    sys.path.insert(0, os.path.abspath(SRC))
