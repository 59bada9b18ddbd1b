"""Cycle-space decomposition of undirected graphs."""
