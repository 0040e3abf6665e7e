# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Iteration-aware design and analysis of LDPC and GLDPC code ensembles."""

__version__ = "0.1.0"

from .ext import IterDesign  # noqa: E402

__all__ = ("__version__", "IterDesign")
