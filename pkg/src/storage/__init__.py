"""Storage for verification run history."""
from .database import Database

__all__ = ['Database']
