"""Engel graphs of finite groups."""
