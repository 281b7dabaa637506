//! Maximum bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

pub(crate) struct Matching {
    pub size: usize,
    pub pair_of_left: Vec<Option<usize>>,
    pub pair_of_right: Vec<Option<usize>>,
}

const INF: usize = usize::MAX;

/// `adj[i]` lists the right vertices adjacent to left vertex `i`. Vertices are
/// visited in index order, so the result is deterministic.
pub(crate) fn maximum_matching(adj: &[Vec<usize>], n_right: usize) -> Matching {
    let n_left = adj.len();
    let mut pair_of_left = vec![None; n_left];
    let mut pair_of_right: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![INF; n_left];
    let mut size = 0;

    loop {
        // layer the free left vertices
        let mut queue = VecDeque::new();
        for i in 0..n_left {
            if pair_of_left[i].is_none() {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = INF;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                match pair_of_right[j] {
                    None => found = true,
                    Some(k) if dist[k] == INF => {
                        dist[k] = dist[i] + 1;
                        queue.push_back(k);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        for i in 0..n_left {
            if pair_of_left[i].is_none()
                && augment(i, adj, &mut dist, &mut pair_of_left, &mut pair_of_right)
            {
                size += 1;
            }
        }
    }
    Matching { size, pair_of_left, pair_of_right }
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    dist: &mut [usize],
    pair_of_left: &mut [Option<usize>],
    pair_of_right: &mut [Option<usize>],
) -> bool {
    for &j in &adj[i] {
        let ok = match pair_of_right[j] {
            None => true,
            Some(k) => dist[k] == dist[i] + 1 && augment(k, adj, dist, pair_of_left, pair_of_right),
        };
        if ok {
            pair_of_left[i] = Some(j);
            pair_of_right[j] = Some(i);
            return true;
        }
    }
    dist[i] = INF;
    false
}

impl Matching {
    /// For a matching that is maximum but leaves some left vertex free:
    /// the left vertices reachable by alternating paths from free left
    /// vertices, together with their neighbourhood, which is smaller.
    pub(crate) fn hall_violator(&self, adj: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
        let mut seen_left = vec![false; adj.len()];
        let mut seen_right = vec![false; self.pair_of_right.len()];
        let mut queue: VecDeque<usize> =
            (0..adj.len()).filter(|i| self.pair_of_left[*i].is_none()).collect();
        for &i in &queue {
            seen_left[i] = true;
        }
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if seen_right[j] {
                    continue;
                }
                seen_right[j] = true;
                if let Some(k) = self.pair_of_right[j] {
                    if !seen_left[k] {
                        seen_left[k] = true;
                        queue.push_back(k);
                    }
                }
            }
        }
        let left = (0..adj.len()).filter(|i| seen_left[*i]).collect();
        let right = (0..seen_right.len()).filter(|j| seen_right[*j]).collect();
        (left, right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_on_cycle() {
        let adj = vec![vec![0, 1], vec![1, 2], vec![2, 0]];
        let m = maximum_matching(&adj, 3);
        assert_eq!(m.size, 3);
    }

    #[test]
    fn violator_when_deficient() {
        // two left vertices share a single neighbour
        let adj = vec![vec![0], vec![0], vec![1, 2]];
        let m = maximum_matching(&adj, 3);
        assert_eq!(m.size, 2);
        let (left, right) = m.hall_violator(&adj);
        assert_eq!(left, vec![0, 1]);
        assert_eq!(right, vec![0]);
    }
}
