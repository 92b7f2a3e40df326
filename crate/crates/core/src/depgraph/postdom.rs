//! Post-dominator tree over the Exit-augmented CFG.
//!
//! Iterative algorithm of Cooper, Harvey and Kennedy run on the reversed
//! graph, so the "dominator" of a node here is its immediate post-dominator.

use std::collections::VecDeque;

use super::cfg::Cfg;

/// Successor lists with a pseudo-edge to Exit added for every node that
/// has no path to Exit (infinite loops), making post-dominance total.
pub fn augmented_successors(cfg: &Cfg) -> Vec<Vec<usize>> {
    let n = cfg.node_count();
    let exit = cfg.exit();
    let mut reaches = vec![false; n];
    reaches[exit] = true;
    let mut queue = VecDeque::from([exit]);
    while let Some(v) = queue.pop_front() {
        for &p in cfg.predecessors(v) {
            if !reaches[p] {
                reaches[p] = true;
                queue.push_back(p);
            }
        }
    }
    (0..n)
        .map(|v| {
            let mut s = cfg.successors(v).to_vec();
            if !reaches[v] {
                s.push(exit);
                s.sort_unstable();
                s.dedup();
            }
            s
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct PostDomTree {
    exit: usize,
    ipdom: Vec<Option<usize>>,
}

impl PostDomTree {
    pub fn compute(succ: &[Vec<usize>], exit: usize) -> Self {
        let n = succ.len();
        let mut rpred: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, ss) in succ.iter().enumerate() {
            for &s in ss {
                rpred[s].push(v);
            }
        }

        // Postorder of a DFS from Exit along reversed edges.
        let mut post = Vec::with_capacity(n);
        let mut visited = vec![false; n];
        let mut stack = vec![(exit, 0usize)];
        visited[exit] = true;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if let Some(&w) = rpred[v].get(*i) {
                *i += 1;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                post.push(v);
                stack.pop();
            }
        }
        let mut order = vec![usize::MAX; n];
        for (k, &v) in post.iter().enumerate() {
            order[v] = k;
        }

        let mut ipdom: Vec<Option<usize>> = vec![None; n];
        ipdom[exit] = Some(exit);
        let intersect = |ipdom: &[Option<usize>], mut a: usize, mut b: usize| {
            while a != b {
                while order[a] < order[b] {
                    a = ipdom[a].expect("processed node has an ipdom");
                }
                while order[b] < order[a] {
                    b = ipdom[b].expect("processed node has an ipdom");
                }
            }
            a
        };
        let mut changed = true;
        while changed {
            changed = false;
            for &v in post.iter().rev() {
                if v == exit {
                    continue;
                }
                let mut new = None;
                for &s in &succ[v] {
                    if ipdom[s].is_none() {
                        continue;
                    }
                    new = Some(match new {
                        None => s,
                        Some(cur) => intersect(&ipdom, s, cur),
                    });
                }
                if new.is_some() && ipdom[v] != new {
                    ipdom[v] = new;
                    changed = true;
                }
            }
        }
        ipdom[exit] = None;
        PostDomTree { exit, ipdom }
    }

    /// Immediate post-dominator; `None` for Exit and for nodes that cannot
    /// reach Exit.
    pub fn ipdom(&self, v: usize) -> Option<usize> {
        self.ipdom[v]
    }

    pub fn exit(&self) -> usize {
        self.exit
    }

    /// Whether `a` post-dominates `b` (reflexive).
    pub fn post_dominates(&self, a: usize, b: usize) -> bool {
        let mut cur = Some(b);
        while let Some(c) = cur {
            if c == a {
                return true;
            }
            cur = self.ipdom[c];
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond() {
        // 0 -> {1, 2}; 1 -> 3; 2 -> 3; 3 -> 4 (exit)
        let succ = vec![vec![1, 2], vec![3], vec![3], vec![4], vec![]];
        let t = PostDomTree::compute(&succ, 4);
        assert_eq!(t.ipdom(0), Some(3));
        assert_eq!(t.ipdom(1), Some(3));
        assert_eq!(t.ipdom(3), Some(4));
        assert_eq!(t.ipdom(4), None);
        assert!(t.post_dominates(3, 0));
        assert!(!t.post_dominates(1, 0));
    }

    #[test]
    fn loop_with_exit() {
        // 0 -> 1; 1 -> {0, 2}; 2 exit
        let succ = vec![vec![1], vec![0, 2], vec![]];
        let t = PostDomTree::compute(&succ, 2);
        assert_eq!(t.ipdom(0), Some(1));
        assert_eq!(t.ipdom(1), Some(2));
    }
}
