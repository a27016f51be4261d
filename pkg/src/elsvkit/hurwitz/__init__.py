"""Hurwitz numbers by symmetric-group counting.

Two routes: an exhaustive tuple enumeration (compiled kernel when
available, pure Python otherwise) and a character-sum evaluation with a
connected/disconnected conversion. They are compared in the tests and in
the verification campaigns.
"""

from __future__ import annotations

from .counts import (
    branch_count,
    count_connected,
    count_disconnected,
    hurwitz_connected,
    hurwitz_disconnected,
    hurwitz_number,
    kernel_in_use,
    labeled_factor,
)
from .frobenius import (
    character_value,
    content_sum,
    partitions,
    symmetric_group_character_table,
)

__all__ = [
    "branch_count",
    "count_connected",
    "count_disconnected",
    "hurwitz_connected",
    "hurwitz_disconnected",
    "hurwitz_number",
    "kernel_in_use",
    "labeled_factor",
    "character_value",
    "content_sum",
    "partitions",
    "symmetric_group_character_table",
]
