from .base import Direction, KeplerSystem
