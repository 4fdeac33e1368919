"""Test suite for Phin Workbench."""
