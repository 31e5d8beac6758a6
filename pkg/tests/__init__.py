"""
Package de tests pour DESING
"""
