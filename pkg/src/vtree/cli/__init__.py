"""
Interface de linha de comando (`vtree`).
"""
