"""Pause-aware audio segmentation.

Times are seconds (floats) on the Python side; the core keeps them as
integer microseconds, so boundaries round-trip exactly at that resolution.
"""

from ._pauseseg import (
    AudioError,
    Segment,
    StreamingSegmenter,
    boundary_prf,
    classify,
    compute_stats,
    detect_pauses,
    encode_wav,
    format_stats_table,
    read_audio,
    read_manifest,
    segment,
    segment_fixed,
    segment_hybrid,
    segment_srpol,
    write_manifest,
)

__version__ = "0.1.0"

__all__ = [
    "AudioError",
    "Segment",
    "StreamingSegmenter",
    "boundary_prf",
    "classify",
    "compute_stats",
    "detect_pauses",
    "encode_wav",
    "format_stats_table",
    "read_audio",
    "read_manifest",
    "segment",
    "segment_fixed",
    "segment_hybrid",
    "segment_srpol",
    "write_manifest",
]
