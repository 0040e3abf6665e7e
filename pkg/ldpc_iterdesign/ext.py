# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Application object wiring configuration and services."""

import logging
import os
from typing import Mapping, Optional

from . import config
from .services import EnsembleService, EnsembleServiceConfig

logger = logging.getLogger(__name__)


class IterDesign(object):
    """ldpc-iterdesign application."""

    def __init__(self, overrides: Optional[Mapping] = None, environ: Optional[Mapping] = None):
        """Application initialization.

        Args:
            overrides: Explicit ``ITERDESIGN_*`` settings (highest precedence)
            environ: Environment mapping (defaults to ``os.environ``)
        """
        self.config = {}
        self.init_app(overrides, os.environ if environ is None else environ)

    def init_app(self, overrides, environ):
        """Load configuration and build the services."""
        self.init_config(overrides, environ)
        self.init_services()

    def init_config(self, overrides, environ):
        """Initialize configuration."""
        # Load all ITERDESIGN_* config variables
        for k in dir(config):
            if k.startswith("ITERDESIGN_"):
                self.config.setdefault(k, getattr(config, k))
        output_dir = environ.get(config.ITERDESIGN_OUTPUT_DIR_ENV)
        if output_dir:
            self.config["ITERDESIGN_OUTPUT_DIR"] = output_dir
        for k, v in (overrides or {}).items():
            if v is not None:
                self.config[k] = v

    def init_services(self):
        """Initialize the ensemble service."""
        self.ensemble_service = EnsembleService(config=EnsembleServiceConfig, settings=self.config)
        logger.debug("services ready (threads=%s)", self.config["ITERDESIGN_THREADS"])

    @property
    def output_dir(self) -> str:
        """Directory for relative output paths."""
        return self.config["ITERDESIGN_OUTPUT_DIR"]
