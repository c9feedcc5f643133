"""Exact workbench for 2-blocks, defect couples, and FS indicators."""

__version__ = "0.1.0"
