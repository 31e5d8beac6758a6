"""Module deltaorder - Extensions Δ, ordre maximal et lieux Sing(J, b)."""
from app.features.deltaorder.schemas import DeltaChain
from app.features.deltaorder.service import DeltaOrderService

__all__ = ["DeltaChain", "DeltaOrderService"]
