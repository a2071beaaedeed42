"""Process-pool helpers shared by the range sweeps."""
import os
from concurrent.futures import ProcessPoolExecutor

JOBS_ENV = "REDCOLLATZ_JOBS"


def default_jobs():
    env = os.environ.get(JOBS_ENV)
    if env:
        return max(1, int(env))
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return os.cpu_count() or 1


def split_range(lo, hi, size):
    """Consecutive [a, b] pieces of [lo, hi], each holding at most *size* integers."""
    a = lo
    while a <= hi:
        b = min(hi, a + size - 1)
        yield a, b
        a = b + 1


def map_chunks(fn, tasks, jobs=1):
    """Yield ``fn(task)`` for each task, in task order."""
    tasks = list(tasks)
    if jobs is None:
        jobs = default_jobs()
    if jobs <= 1 or len(tasks) <= 1:
        for t in tasks:
            yield fn(t)
        return
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        yield from pool.map(fn, tasks)
