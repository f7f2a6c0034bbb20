"""Exact scalars, dense linear algebra and the sparse exterior algebra."""
