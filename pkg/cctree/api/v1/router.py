# File path: cctree/api/v1/router.py
from fastapi import APIRouter

from cctree.api.v1.endpoints import changes, trees

api_router = APIRouter()

api_router.include_router(trees.router)
api_router.include_router(changes.router)
