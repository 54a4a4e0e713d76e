"""
API Routers Package

Routers group related endpoints together; main.py mounts each under its
own prefix:

- health:   /api/v1/health/*   liveness, readiness, library versions
- solve:    /api/v1/solve/*    volumes, pressures, oracle
- analysis: /api/v1/analysis/* scan, bulge boundary, inference, ambiguity
"""

from api.routers import analysis, health, solve

__all__ = ["analysis", "health", "solve"]
