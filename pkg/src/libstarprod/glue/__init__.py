__all__ = ["gluing", "operators"]
