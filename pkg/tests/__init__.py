"""Tests for the Willmore flow laboratory."""
