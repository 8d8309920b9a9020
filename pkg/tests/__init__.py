"""Pakiet testów dla Autonomous Newsroom."""
