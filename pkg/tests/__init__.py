"""Tests for twistkh."""
