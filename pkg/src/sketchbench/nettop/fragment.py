"""Placeholder, replaced by the real implementation."""
TopFragment = None
check_model_cocones = None
model_from_space = None
space_from_model = None
top_sketch = None
