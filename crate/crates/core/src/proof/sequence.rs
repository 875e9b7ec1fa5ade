use super::{PuzzleSolution, PuzzleTask, ResolvedAttempt};
use crate::Points;

/// Scans solution positions from `sol_idx` upward for the first entry point
/// whose item occurs in the attempt at or after `ans_idx`. Returns the
/// solution position and the attempt position of that item, or `None` when
/// no resynchronisation point remains.
pub fn find_next_sequence_start(
    solution: &PuzzleSolution,
    attempt: &ResolvedAttempt,
    sol_idx: usize,
    ans_idx: usize,
) -> Option<(usize, usize)> {
    let tail = attempt.items().get(ans_idx..)?;
    (sol_idx..solution.len())
        .filter(|&pos| solution.is_entry(pos))
        .find_map(|pos| {
            let item = solution.items()[pos];
            tail.iter()
                .position(|&a| a == item)
                .map(|offset| (pos, ans_idx + offset))
        })
}

/// Sum of the weights of solution items matched in lockstep with the
/// attempt. After a mismatch, scoring resumes at the next entry point that
/// still occurs later in the attempt. The result is not clamped to the
/// solution's points.
pub fn sequence_score(task: &PuzzleTask, solution: &PuzzleSolution, attempt: &ResolvedAttempt) -> Points {
    let mut score = Points::ZERO;
    let mut cursor = find_next_sequence_start(solution, attempt, 0, 0);
    while let Some((sol_idx, ans_idx)) = cursor {
        if sol_idx >= solution.len() || ans_idx >= attempt.len() {
            break;
        }
        let item = solution.items()[sol_idx];
        cursor = if item == attempt.items()[ans_idx] {
            score += task.weight(item);
            Some((sol_idx + 1, ans_idx + 1))
        } else {
            find_next_sequence_start(solution, attempt, sol_idx, ans_idx)
        };
    }
    score
}
