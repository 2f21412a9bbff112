from app.core.parallel.closure import check_parallel_closure, run_parallel_suite
from app.core.parallel.interleave import interleavings, make_interleave_merge
from app.core.parallel.merge import R2m, Rm, merge_alphabet, par_by_merge, random_merge, sep, swap_indices

__all__ = [
    "R2m",
    "Rm",
    "check_parallel_closure",
    "interleavings",
    "make_interleave_merge",
    "merge_alphabet",
    "par_by_merge",
    "random_merge",
    "run_parallel_suite",
    "sep",
    "swap_indices",
]
