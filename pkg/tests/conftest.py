import os
import sys

# let test modules import the shared helpers in util.py
sys.path.insert(0, os.path.dirname(__file__))
