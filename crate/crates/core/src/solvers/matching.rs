//! Bipartite matching between "left" slots (consecutive vertex pairs) and
//! "right" items (edge ids).

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Maximum matching by Hopcroft-Karp. `adj[l]` lists the right items
/// acceptable to left slot `l`, in preference order. Returns `pair[l]`.
pub fn hopcroft_karp(adj: &[Vec<usize>], right_len: usize) -> Vec<Option<usize>> {
    let left_len = adj.len();
    let mut pair_left = vec![FREE; left_len];
    let mut pair_right = vec![FREE; right_len];
    let mut dist = vec![0usize; left_len];
    let mut queue = VecDeque::new();
    loop {
        // layered BFS from the free left slots
        queue.clear();
        let mut reachable_free = false;
        for l in 0..left_len {
            if pair_left[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        while let Some(l) = queue.pop_front() {
            for &rt in &adj[l] {
                let next = pair_right[rt];
                if next == FREE {
                    reachable_free = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !reachable_free {
            break;
        }
        let mut grew = false;
        for l in 0..left_len {
            if pair_left[l] == FREE && augment_layered(l, adj, &mut pair_left, &mut pair_right, &mut dist) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    pair_left
        .into_iter()
        .map(|r| (r != FREE).then_some(r))
        .collect()
}

fn augment_layered(
    l: usize,
    adj: &[Vec<usize>],
    pair_left: &mut [usize],
    pair_right: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &rt in &adj[l] {
        let next = pair_right[rt];
        let ok = next == FREE
            || (dist[next] == dist[l] + 1 && augment_layered(next, adj, pair_left, pair_right, dist));
        if ok {
            pair_left[l] = rt;
            pair_right[rt] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

/// A perfect assignment of left slots (or `None`).
pub fn perfect_matching(adj: &[Vec<usize>], right_len: usize) -> Option<Vec<usize>> {
    hopcroft_karp(adj, right_len).into_iter().collect()
}

/// Matching that grows and shrinks one left slot at a time in stack order,
/// keeping every present slot matched. Used to prune depth-first searches:
/// a push fails exactly when the slots so far have no system of distinct
/// representatives.
#[derive(Clone, Debug)]
pub struct StackMatching {
    adj: Vec<Vec<usize>>,
    pair_left: Vec<usize>,
    pair_right: Vec<usize>,
    seen: Vec<u32>,
    stamp: u32,
}

impl StackMatching {
    pub fn new(right_len: usize) -> Self {
        StackMatching {
            adj: Vec::new(),
            pair_left: Vec::new(),
            pair_right: vec![FREE; right_len],
            seen: vec![0; right_len],
            stamp: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Adds a slot with the given candidates. On failure nothing changes.
    pub fn push(&mut self, candidates: Vec<usize>) -> bool {
        let l = self.adj.len();
        self.adj.push(candidates);
        self.pair_left.push(FREE);
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        if self.augment(l) {
            true
        } else {
            self.adj.pop();
            self.pair_left.pop();
            false
        }
    }

    /// Removes the most recent slot.
    pub fn pop(&mut self) {
        if let Some(rt) = self.pair_left.pop() {
            self.pair_right[rt] = FREE;
            self.adj.pop();
        }
    }

    fn augment(&mut self, l: usize) -> bool {
        for i in 0..self.adj[l].len() {
            let rt = self.adj[l][i];
            if self.seen[rt] == self.stamp {
                continue;
            }
            self.seen[rt] = self.stamp;
            let owner = self.pair_right[rt];
            if owner == FREE || self.augment(owner) {
                self.pair_left[l] = rt;
                self.pair_right[rt] = l;
                return true;
            }
        }
        false
    }

    /// Current assignment, slot by slot.
    pub fn assignment(&self) -> &[usize] {
        &self.pair_left
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Largest matching by trying every injective assignment.
    fn brute(adj: &[Vec<usize>], used: &mut Vec<bool>, l: usize) -> usize {
        if l == adj.len() {
            return 0;
        }
        let mut best = brute(adj, used, l + 1);
        for &r in &adj[l] {
            if !used[r] {
                used[r] = true;
                best = best.max(1 + brute(adj, used, l + 1));
                used[r] = false;
            }
        }
        best
    }

    #[test]
    fn hopcroft_karp_is_maximum() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..300 {
            let left = rng.gen_range(1..7);
            let right = rng.gen_range(1..7);
            let adj: Vec<Vec<usize>> = (0..left)
                .map(|_| (0..right).filter(|_| rng.gen_bool(0.35)).collect())
                .collect();
            let m = hopcroft_karp(&adj, right);
            let size = m.iter().flatten().count();
            assert_eq!(size, brute(&adj, &mut vec![false; right], 0));
            let mut taken = vec![false; right];
            for (l, r) in m.iter().enumerate() {
                if let Some(r) = *r {
                    assert!(adj[l].contains(&r));
                    assert!(!taken[r]);
                    taken[r] = true;
                }
            }
        }
    }

    #[test]
    fn stack_matching_tracks_hall() {
        let mut s = StackMatching::new(3);
        assert!(s.push(vec![0, 1]));
        assert!(s.push(vec![0]));
        assert_eq!(s.assignment(), &[1, 0]);
        assert!(!s.push(vec![0, 1]));
        assert_eq!(s.len(), 2);
        assert!(s.push(vec![1, 2]));
        s.pop();
        s.pop();
        assert!(s.push(vec![0, 1]));
        assert_eq!(s.len(), 2);
    }
}
