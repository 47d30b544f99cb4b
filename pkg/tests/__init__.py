"""
qflowbench test suite.
"""
