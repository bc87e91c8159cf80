"""Exact and numeric workbench for caustic preservation in nearly circular
elliptic billiards: expansion coefficients of the action-angle coordinate
change, caustic-preservation linear systems over cosine number fields with
kernel certificates, smoothness-constant selection, and a floating-point
billiard for cross-validation.
"""

__version__ = "0.1.0"
