"""
API HTTP (FastAPI) sobre as operações de valuação.
"""
