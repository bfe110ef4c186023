from .axes import XLooper
