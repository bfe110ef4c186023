#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Entry point for ``python -m ckm``."""

__authors__ = ["CKM Developers"]
__created__ = "2026-10-19"
__updated__ = "2026-10-19"

# dependencies
import sys

# ckm modules
from .cli import main

if __name__ == '__main__':
    sys.exit(main())
