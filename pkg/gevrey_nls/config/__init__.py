"""Runtime configuration for gevrey-nls.

``runtime`` and ``autotune`` are imported eagerly; the experiment model lives
in ``gevrey_nls.config.experiment`` and depends on the numerical core.
"""

from . import runtime
from .autotune import apply_runtime_autotune
from .runtime import (
    NumericsProfile,
    PicardProfile,
    ScheduleProfile,
    reload_profiles,
)

__all__ = [
    "runtime",
    "apply_runtime_autotune",
    "NumericsProfile",
    "PicardProfile",
    "ScheduleProfile",
    "reload_profiles",
]
