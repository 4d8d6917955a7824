//! Dense bipartite matching on small graphs via augmenting paths, plus a
//! lexicographically-least perfect matching refinement.
//!
//! Adjacency lists must be sorted ascending; the lexicographic refinement
//! then yields the least right-vertex sequence in left order.

/// Size of a maximum matching, with left vertices `skip_before..adj.len()`
/// and the rights flagged in `blocked` unusable.
fn max_matching_size(
    adj: &[Vec<usize>],
    right_count: usize,
    skip_before: usize,
    blocked: &[bool],
) -> usize {
    let mut right_match: Vec<Option<usize>> = vec![None; right_count];
    let mut size = 0;
    for u in skip_before..adj.len() {
        let mut seen = vec![false; right_count];
        if augment(u, adj, blocked, &mut right_match, &mut seen) {
            size += 1;
        }
    }
    size
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    blocked: &[bool],
    right_match: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &v in &adj[u] {
        if blocked[v] || seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match right_match[v] {
            None => true,
            Some(w) => augment(w, adj, blocked, right_match, seen),
        };
        if free {
            right_match[v] = Some(u);
            return true;
        }
    }
    false
}

pub(crate) fn has_perfect_matching(adj: &[Vec<usize>], right_count: usize) -> bool {
    let blocked = vec![false; right_count];
    max_matching_size(adj, right_count, 0, &blocked) == adj.len()
}

/// The perfect matching whose right-vertex sequence (in left order) is
/// lexicographically least, or `None` when no perfect matching exists.
pub(crate) fn lex_least_perfect_matching(
    adj: &[Vec<usize>],
    right_count: usize,
) -> Option<Vec<usize>> {
    let n = adj.len();
    if !has_perfect_matching(adj, right_count) {
        return None;
    }
    let mut blocked = vec![false; right_count];
    let mut chosen = Vec::with_capacity(n);
    for u in 0..n {
        let mut pick = None;
        for &v in &adj[u] {
            if blocked[v] {
                continue;
            }
            blocked[v] = true;
            if max_matching_size(adj, right_count, u + 1, &blocked) == n - u - 1 {
                pick = Some(v);
                break;
            }
            blocked[v] = false;
        }
        chosen.push(pick.expect("feasibility was established before fixing edges"));
    }
    Some(chosen)
}
