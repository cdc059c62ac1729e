"""
Analysis package - generating functions, asymptotics and uniform sampling
"""
