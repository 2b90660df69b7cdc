"""Spatial traffic-correlation networks of base stations."""
