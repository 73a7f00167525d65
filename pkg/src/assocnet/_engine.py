"""Array-level Monte Carlo core for the spreading-activation search.

Determinism contract: candidates are visited in ascending node id, scores
accumulate in a fixed order (stimulus rows first, current guess last), and
all randomness comes from one vectorised counter-based generator keyed by
(seed, problem index, run index, step). Results are therefore bit-identical
for any scheduling of the work, and identical whether or not the kernel is
compiled (set ASSOCNET_NO_NUMBA=1 to force the interpreter path).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

# Draw counters are laid out as (run << STEP_BITS) | step, so streams do not
# depend on the t_max a particular call happened to use.
STEP_BITS = 20
MAX_T = 1 << STEP_BITS
MAX_RUNS = 1 << 40

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)

SOLVED = 0
EXHAUSTED = 1
DEAD_END = 2


def _mix64(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finaliser, vectorised over uint64 arrays."""
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _stream_base(seed: int, problem_index: int) -> np.ndarray:
    s = np.array([seed], dtype=np.uint64)
    p = np.array([problem_index], dtype=np.uint64)
    return _mix64(s + _GOLDEN * (p + np.uint64(1)))


def uniform_block(
    seed: int, problem_index: int, n_runs: int, t_max: int, first_run: int = 0
) -> np.ndarray:
    """u[run, step] in [0, 1) for runs first_run..first_run+n_runs-1.

    Row r of a block equals the corresponding row of any other block with the
    same (seed, problem_index, run); shorter blocks are prefixes of longer
    ones. That prefix property is what makes t_max sweeps shareable.
    """
    if not 0 <= t_max < MAX_T:
        raise ValueError(f"t_max must be < {MAX_T}")
    if not (0 <= first_run and first_run + n_runs <= MAX_RUNS):
        raise ValueError(f"run index must be < {MAX_RUNS}")
    base = _stream_base(seed, problem_index).reshape(1, 1)
    runs = np.arange(first_run, first_run + n_runs, dtype=np.uint64) << np.uint64(STEP_BITS)
    steps = np.arange(t_max, dtype=np.uint64)
    ctr = (runs[:, None] | steps[None, :]) + np.uint64(1)
    z = _mix64(base + _GOLDEN * ctr)
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def stimulus_field(
    out_ptr: np.ndarray, out_dst: np.ndarray, out_wt: np.ndarray, stimuli
) -> tuple[np.ndarray, np.ndarray]:
    """Summed stimulus->neighbour weights: the part of the activation score
    that never changes during a run. Ids ascending; sums accumulate in
    stimulus order."""
    ids = np.concatenate([out_dst[out_ptr[s] : out_ptr[s + 1]] for s in stimuli])
    wts = np.concatenate([out_wt[out_ptr[s] : out_ptr[s + 1]] for s in stimuli])
    if ids.size == 0:
        return ids.astype(np.int64), wts
    uniq, inverse = np.unique(ids, return_inverse=True)
    acc = np.zeros(uniq.size, dtype=np.float64)
    np.add.at(acc, inverse, wts)
    return uniq.astype(np.int64), acc


def _simulate_kernel(
    out_ptr,
    out_dst,
    out_wt,
    base_ids,
    base_wt,
    s1,
    s2,
    s3,
    response,
    tau,
    uniforms,
    stamp,
    cand_ids,
    cand_wt,
    success_step,
    fail_kind,
    steps,
):
    """One batch of independent runs for a single problem.

    Active/checked bookkeeping is a per-run stamp; the candidate set at each
    step is the merge (ascending id) of the precomputed stimulus field with
    the current guess's out-row. uniforms[run, t] is the only randomness.
    """
    n_runs = uniforms.shape[0]
    t_max = uniforms.shape[1]
    nb = base_ids.shape[0]
    for run in range(n_runs):
        stamp[s1] = run
        stamp[s2] = run
        stamp[s3] = run
        guess = -1
        outcome = EXHAUSTED
        t = 0
        while t < t_max:
            if guess >= 0:
                j = out_ptr[guess]
                jend = out_ptr[guess + 1]
            else:
                j = 0
                jend = 0
            i = 0
            m = 0
            total = 0.0
            while i < nb or j < jend:
                if i < nb and (j >= jend or base_ids[i] <= out_dst[j]):
                    node = base_ids[i]
                    score = base_wt[i]
                    if j < jend and out_dst[j] == node:
                        score += out_wt[j]
                        j += 1
                    i += 1
                else:
                    node = out_dst[j]
                    score = out_wt[j]
                    j += 1
                if stamp[node] != run and score >= tau:
                    cand_ids[m] = node
                    cand_wt[m] = score
                    total += score
                    m += 1
            if m == 0:
                outcome = DEAD_END
                break
            threshold = uniforms[run, t] * total
            acc = 0.0
            pick = cand_ids[m - 1]
            for q in range(m):
                acc += cand_wt[q]
                if acc > threshold:
                    pick = cand_ids[q]
                    break
            t += 1
            if pick == response:
                outcome = SOLVED
                break
            stamp[pick] = run
            guess = pick
        fail_kind[run] = outcome
        if outcome == SOLVED:
            success_step[run] = t
            steps[run] = t
        elif outcome == DEAD_END:
            success_step[run] = 0
            steps[run] = t
        else:
            success_step[run] = 0
            steps[run] = t_max


# Interpreter-path alias kept for cross-checking against the compiled kernel.
simulate_kernel_py = _simulate_kernel

if numba is not None and not os.environ.get("ASSOCNET_NO_NUMBA"):
    _simulate_kernel = numba.njit(cache=True)(_simulate_kernel)


def simulate_runs(
    out_ptr: np.ndarray,
    out_dst: np.ndarray,
    out_wt: np.ndarray,
    n_nodes: int,
    stimuli,
    response: int,
    tau: float,
    uniforms: np.ndarray,
    kernel=None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run uniforms.shape[0] independent searches; returns per-run arrays
    (success_step: 0 when unsolved, fail_kind: SOLVED/EXHAUSTED/DEAD_END,
    steps at termination)."""
    base_ids, base_wt = stimulus_field(out_ptr, out_dst, out_wt, stimuli)
    max_deg = int(np.max(out_ptr[1:] - out_ptr[:-1])) if n_nodes > 0 else 0
    cap = max(base_ids.size + max_deg, 1)
    n_runs = uniforms.shape[0]
    stamp = np.full(n_nodes, -1, dtype=np.int64)
    cand_ids = np.empty(cap, dtype=np.int64)
    cand_wt = np.empty(cap, dtype=np.float64)
    success_step = np.zeros(n_runs, dtype=np.int64)
    fail_kind = np.zeros(n_runs, dtype=np.int64)
    steps = np.zeros(n_runs, dtype=np.int64)
    run = _simulate_kernel if kernel is None else kernel
    run(
        np.ascontiguousarray(out_ptr, dtype=np.int64),
        np.ascontiguousarray(out_dst, dtype=np.int64),
        np.ascontiguousarray(out_wt, dtype=np.float64),
        base_ids,
        base_wt,
        int(stimuli[0]),
        int(stimuli[1]),
        int(stimuli[2]),
        int(response),
        float(tau),
        np.ascontiguousarray(uniforms, dtype=np.float64),
        stamp,
        cand_ids,
        cand_wt,
        success_step,
        fail_kind,
        steps,
    )
    return success_step, fail_kind, steps
