"""Verification commands, one module per command; apps/manifest.json names them."""
