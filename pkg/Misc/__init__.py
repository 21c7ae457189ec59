# -*- coding: utf-8 -*-
"""Parsing, exact arithmetic and instance file helpers."""
