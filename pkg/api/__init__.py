"""
API Package - FastAPI Application

REST layer over the doublet library.

    api/
    ├── main.py          # app, middleware, exception mapping
    ├── routers/
    │   ├── health.py    # /api/v1/health/*
    │   ├── solve.py     # /api/v1/solve/*
    │   └── analysis.py  # /api/v1/analysis/*
    └── schemas/
        ├── base.py      # response envelope
        └── doublet.py   # request bodies

Run:
    uvicorn api.main:app --reload
"""

from api.main import app

__all__ = ["app"]
