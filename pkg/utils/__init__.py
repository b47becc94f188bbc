"""Utilities for the model averaging service"""
