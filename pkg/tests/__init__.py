"""Test suite for tree quadrature."""
