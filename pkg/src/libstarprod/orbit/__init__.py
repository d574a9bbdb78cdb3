__all__ = ["harmonic", "su2"]
