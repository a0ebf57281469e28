"""
Command-line layer: run configuration and subcommands.
"""
