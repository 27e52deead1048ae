"""
Proper orientations of 3-partite graphs.

Builds orientations with maximum out-degree at most ceil(Mad/2) + 7 together
with the exact subroutines the construction relies on.
"""

__version__ = "1.0.0"
