"""Initial data, result tables, plot scripts and the worker pool."""
