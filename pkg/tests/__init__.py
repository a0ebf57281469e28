"""
Test suite for the SFP Option Pricer.

This package contains unit tests for all system components:
- Characteristic functions, cumulants and model validation
- Payoff transforms and truncated Fourier series
- Singular Fourier-Pade solver and jump detection
- Pricing, Greeks and reference baselines
- Run configuration and command-line subcommands

Run tests with: python -m pytest tests/
"""
