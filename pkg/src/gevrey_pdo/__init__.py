"""Numerical Gevrey-space operator calculus on the periodic torus."""
__version__ = "0.1.0"
