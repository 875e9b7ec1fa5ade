use crate::Points;
use alloc::vec;

/// Minimal total weight of insertions and removals turning `attempt` into
/// `solution`. Inserting or removing an item costs its weight; there is no
/// substitution or swap.
pub fn weighted_edit_distance<T, W>(solution: &[T], attempt: &[T], weight: W) -> Points
where
    T: PartialEq,
    W: Fn(&T) -> Points,
{
    let cols = attempt.len() + 1;
    // row-major (solution.len() + 1) x (attempt.len() + 1)
    let mut dist = vec![Points::ZERO; (solution.len() + 1) * cols];
    for j in 1..cols {
        dist[j] = dist[j - 1] + weight(&attempt[j - 1]);
    }
    for i in 1..=solution.len() {
        let insert = weight(&solution[i - 1]);
        dist[i * cols] = dist[(i - 1) * cols] + insert;
        for j in 1..cols {
            let mut best = (dist[(i - 1) * cols + j] + insert).min(dist[i * cols + j - 1] + weight(&attempt[j - 1]));
            if solution[i - 1] == attempt[j - 1] {
                best = best.min(dist[(i - 1) * cols + j - 1]);
            }
            dist[i * cols + j] = best;
        }
    }
    dist[solution.len() * cols + attempt.len()]
}
