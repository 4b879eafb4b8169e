"""Bounded verification of the closure properties and the derivation lemmas."""
