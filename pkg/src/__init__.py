"""Executable algebra of context-free grammars: union, concatenation and Kleene closure with checkable derivation certificates."""
