"""Tests package for inkline."""
